#include "fqa/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include <json.hpp>

namespace fqa::io {
namespace {

using nlohmann::json;

double parse_double(std::string_view s, std::string_view what) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw MalformedInput("bad number '" + std::string(s) + "' in " + std::string(what));
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (std::string_view line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    out.push_back(line);
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

std::string state_to_json(const FiniteState& s, double lambda) {
  json comps = json::array();
  for (const cx& a : s.amplitudes()) comps.push_back({a.real(), a.imag()});
  json j{{"d", s.dim()}, {"lambda", lambda}, {"components", comps}};
  return j.dump(2) + "\n";
}

StateFile state_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedInput(std::string("state JSON does not parse: ") + e.what());
  }
  if (!j.is_object() || !j.contains("d") || !j.contains("components"))
    throw MalformedInput("state JSON needs \"d\" and \"components\"");
  if (!j["d"].is_number_integer()) throw MalformedInput("state JSON: \"d\" must be an integer");
  const long d = j["d"].get<long>();
  double lambda = 1.0;
  if (j.contains("lambda")) {
    if (!j["lambda"].is_number()) throw MalformedInput("state JSON: \"lambda\" must be a number");
    lambda = j["lambda"].get<double>();
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw MalformedInput("state JSON: lambda must be positive");
  }
  const json& c = j["components"];
  if (!c.is_array() || d < 1 || static_cast<long>(c.size()) != d)
    throw MalformedInput("state JSON: \"components\" must hold d = " + std::to_string(d) + " entries");
  std::vector<cx> amps;
  for (const json& e : c) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw MalformedInput("state JSON: each component must be [re, im]");
    amps.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  try {
    return StateFile{FiniteState::normalized(std::move(amps)), lambda};
  } catch (const std::invalid_argument& e) {
    throw MalformedInput(std::string("state JSON: ") + e.what());
  }
}

StateFile read_state(const std::filesystem::path& path) { return state_from_json(read_file(path)); }

void write_state(const std::filesystem::path& path, const FiniteState& s, double lambda) {
  write_atomic(path, state_to_json(s, lambda));
}

std::string zeros_to_csv(const std::vector<Zero>& zeros) {
  std::string out = "re,im,multiplicity\n";
  for (const Zero& z : zeros)
    out += fmt(z.position.real()) + "," + fmt(z.position.imag()) + "," + std::to_string(z.multiplicity) + "\n";
  return out;
}

std::vector<Zero> zeros_from_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != "re,im,multiplicity")
    throw MalformedInput("zeros CSV must start with the header re,im,multiplicity");
  std::vector<Zero> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 3) throw MalformedInput("zeros CSV line " + std::to_string(i + 1) + ": expected 3 fields");
    const double mult = parse_double(f[2], "zeros CSV");
    if (mult < 1.0 || mult != std::floor(mult))
      throw MalformedInput("zeros CSV line " + std::to_string(i + 1) + ": multiplicity must be a positive integer");
    out.push_back({cx(parse_double(f[0], "zeros CSV"), parse_double(f[1], "zeros CSV")), static_cast<int>(mult)});
  }
  if (out.empty()) throw MalformedInput("zeros CSV holds no zeros");
  return out;
}

std::vector<Zero> read_zeros(const std::filesystem::path& path) { return zeros_from_csv(read_file(path)); }

std::string sum_to_json(const SumResidual& r) {
  return json{{"M", r.m}, {"N", r.n}, {"residual", r.residual}}.dump(2) + "\n";
}

SumResidual sum_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    return SumResidual{j.at("residual").get<double>(), j.at("M").get<long>(), j.at("N").get<long>()};
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("zero-sum sidecar: ") + e.what());
  }
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  p.replace_extension(".sum.json");
  return p;
}

void write_zeros(const std::filesystem::path& csv, const ZeroSet& zs) {
  write_atomic(csv, zeros_to_csv(zs.zeros));
  write_atomic(sidecar_path(csv), sum_to_json(SumResidual{zs.residual, zs.m, zs.n}));
}

SampledGrid read_wavefunction(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::vector<double> xs;
  std::vector<cx> vals;
  bool first = true;
  for (std::string_view line : lines_of(text)) {
    const auto f = split(line, ',');
    if (first && f.size() == 3 && f[0] == "x") {
      first = false;
      continue;
    }
    first = false;
    if (f.size() != 3) throw MalformedInput("wavefunction CSV: expected rows x,re,im");
    xs.push_back(parse_double(f[0], "wavefunction CSV"));
    vals.emplace_back(parse_double(f[1], "wavefunction CSV"), parse_double(f[2], "wavefunction CSV"));
  }
  try {
    return SampledGrid::from_samples(xs, std::move(vals));
  } catch (const std::invalid_argument& e) {
    throw MalformedInput(std::string("wavefunction CSV: ") + e.what());
  }
}

std::string render_svg(const ZeroSet& zs, const ZeroSet* overlay) {
  const Rect cell = fundamental_cell(zs.params);
  constexpr double size = 480.0;
  constexpr double margin = 24.0;
  const double sx = size / cell.width();
  const double sy = size / cell.height() * (cell.height() / cell.width());
  const double height = cell.height() * sy;
  auto px = [&](cx z) { return margin + (z.real() - cell.lo.real()) * sx; };
  auto py = [&](cx z) { return margin + height - (z.imag() - cell.lo.imag()) * sy; };

  std::ostringstream os;
  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * margin << "\" height=\""
     << height + 2 * margin << "\">\n";
  os << "  <rect class=\"cell\" x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size << "\" height=\""
     << height << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (const Zero& z : zs.zeros)
    os << "  <circle class=\"zero\" cx=\"" << px(z.position) << "\" cy=\"" << py(z.position) << "\" r=\""
       << 4 + 2 * (z.multiplicity - 1) << "\" fill=\"none\" stroke=\"navy\"/>\n";
  if (overlay) {
    for (const Zero& z : overlay->zeros) {
      const cx p = reduce_into_cell(z.position, zs.params);
      const double x = px(p), y = py(p), r = 5.0;
      os << "  <polygon class=\"overlay\" points=\"" << x << "," << y - r << " " << x - r << "," << y + r * 0.8 << " "
         << x + r << "," << y + r * 0.8 << "\" fill=\"none\" stroke=\"firebrick\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

cx parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s.empty()) throw MalformedInput("empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {parse_double(s, "complex number"), 0.0};
  s.pop_back();
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t cut = std::string::npos;
  for (std::size_t k = s.size(); k-- > 0;) {
    if ((s[k] == '+' || s[k] == '-') && (k == 0 || (s[k - 1] != 'e' && s[k - 1] != 'E'))) {
      cut = k;
      break;
    }
  }
  const std::string re_part = cut == std::string::npos ? "" : s.substr(0, cut);
  std::string im_part = cut == std::string::npos ? s : s.substr(cut);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  const double re = re_part.empty() ? 0.0 : parse_double(re_part, "complex number");
  return {re, parse_double(im_part, "complex number")};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  std::random_device rd;
  const auto tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(rd() & 0xffffff));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

}  // namespace fqa::io
