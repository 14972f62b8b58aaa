// File formats shared by the library and the command line:
//   state JSON      { "d": int, "lambda": float, "components": [[re, im], ...] }
//   zeros CSV       header re,im,multiplicity plus a JSON sidecar { "M", "N", "residual" }
//   wavefunction    CSV rows x,re,im (an optional header line is skipped)
//   SVG             cell rectangle with circle markers, triangles for an overlay set
#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fqa/finite_hilbert.hpp"
#include "fqa/params.hpp"
#include "fqa/wavefunction.hpp"
#include "fqa/zeros.hpp"

namespace fqa::io {

/// Input that does not parse or violates its schema.
class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StateFile {
  FiniteState state;
  double lambda = 1.0;
};

std::string state_to_json(const FiniteState& s, double lambda);
StateFile state_from_json(std::string_view text);

StateFile read_state(const std::filesystem::path& path);
void write_state(const std::filesystem::path& path, const FiniteState& s, double lambda);

std::string zeros_to_csv(const std::vector<Zero>& zeros);
std::vector<Zero> zeros_from_csv(std::string_view text);
std::vector<Zero> read_zeros(const std::filesystem::path& path);

std::string sum_to_json(const SumResidual& r);
SumResidual sum_from_json(std::string_view text);

/// zeros.csv -> zeros.sum.json
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

/// Writes the CSV and its sidecar.
void write_zeros(const std::filesystem::path& csv, const ZeroSet& zs);

SampledGrid read_wavefunction(const std::filesystem::path& path);

/// Scatter of the zeros in the fundamental cell. The overlay set, if any, is
/// drawn with triangles.
std::string render_svg(const ZeroSet& zs, const ZeroSet* overlay = nullptr);

/// Parses "re+imi" forms: "1+1i", "0.3-0.2i", "2", "-1.5i", "i".
cx parse_complex(std::string_view text);

std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary file in the same directory and renames it over path.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace fqa::io
