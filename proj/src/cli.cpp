#include "fqa/cli.hpp"

#include <filesystem>
#include <functional>
#include <iomanip>
#include <string>

#include <CLI11.hpp>

#include "fqa/analytic.hpp"
#include "fqa/io.hpp"
#include "fqa/verify.hpp"
#include "fqa/zak.hpp"
#include "fqa/zeros.hpp"

namespace fqa::cli {
namespace {

namespace fs = std::filesystem;

/// Raised by a command whose check did not hold.
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A bad label on the command line is a usage error, not a malformed file.
cx label_arg(const std::string& text) {
  try {
    return io::parse_complex(text);
  } catch (const io::MalformedInput& e) {
    throw std::invalid_argument(e.what());
  }
}

struct Common {
  int d = 0;
  double lambda = 1.0;
  double cell_a = 0.0;
  double cell_b = 0.0;
  std::string out;
  std::uint64_t seed = 1;
  double tol = 0.0;

  SystemParams params(int dim, double lam) const {
    SystemParams p{dim, lam, cell_a, cell_b};
    p.validate();
    return p;
  }
};

void add_cell(CLI::App* c, Common& o) {
  c->add_option("--cell-a", o.cell_a, "real corner of the fundamental cell");
  c->add_option("--cell-b", o.cell_b, "imaginary corner of the fundamental cell");
}

void add_dim(CLI::App* c, Common& o) {
  c->add_option("--d", o.d, "dimension")->required()->check(CLI::PositiveNumber);
  c->add_option("--lambda", o.lambda, "scale parameter")->check(CLI::PositiveNumber);
}

std::string fmt(cx z) {
  std::ostringstream os;
  os << std::setprecision(15) << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

ZeroSet zeros_of(const io::StateFile& f, const Common& o) {
  return find_zeros(AnalyticState(f.state, o.params(f.state.dim(), f.lambda)));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analytic representation of finite quantum systems"};
  app.require_subcommand(1);
  Common o;
  std::function<void()> action;

  // state
  auto* state = app.add_subcommand("state", "build a state and write it as JSON");
  state->require_subcommand(1);
  int number_n = 0;
  long label = 0;
  std::string a_text;
  std::string wave_path;
  auto state_out = [&](CLI::App* c) { c->add_option("--out", o.out, "output JSON")->required(); };
  auto write = [&](const FiniteState& s, double lambda) {
    io::write_state(o.out, s, lambda);
    out << "wrote " << o.out << "\n";
  };

  auto* number = state->add_subcommand("number", "oscillator number state |N>>");
  add_dim(number, o);
  number->add_option("--N", number_n, "excitation number")->required()->check(CLI::NonNegativeNumber);
  state_out(number);
  number->callback([&] { action = [&] { write(number_state(number_n, o.params(o.d, o.lambda)), o.lambda); }; });

  auto* coherent = state->add_subcommand("coherent", "coherent state |A>>");
  add_dim(coherent, o);
  coherent->add_option("--A", a_text, "label, e.g. 1+1i")->required();
  state_out(coherent);
  coherent->callback([&] {
    action = [&] { write(coherent_state_closed(label_arg(a_text), o.params(o.d, o.lambda)), o.lambda); };
  });

  auto* position = state->add_subcommand("position", "position eigenstate |X;m>>");
  add_dim(position, o);
  position->add_option("--m", label, "label")->required();
  state_out(position);
  position->callback([&] { action = [&] { write(position_state(label, o.d), o.lambda); }; });

  auto* momentum = state->add_subcommand("momentum", "momentum eigenstate |P;m>>");
  add_dim(momentum, o);
  momentum->add_option("--m", label, "label")->required();
  state_out(momentum);
  momentum->callback([&] { action = [&] { write(momentum_state(label, o.d), o.lambda); }; });

  auto* sampled = state->add_subcommand("sampled", "image of a sampled wavefunction (CSV rows x,re,im)");
  add_dim(sampled, o);
  sampled->add_option("--wavefunction", wave_path, "CSV file")->required();
  state_out(sampled);
  sampled->callback([&] {
    action = [&] {
      const Wavefunction psi = io::read_wavefunction(wave_path);
      write(zak_map(psi, o.params(o.d, o.lambda)), o.lambda);
    };
  });

  // zeros
  std::string state_path, svg_path, overlay_path, zeros_path;
  auto* zeros = app.add_subcommand("zeros", "locate the d zeros in the fundamental cell");
  zeros->add_option("--state", state_path, "state JSON")->required();
  zeros->add_option("--out", o.out, "zeros CSV (sidecar .sum.json written alongside)")->required();
  zeros->add_option("--svg", svg_path, "also write a scatter of the zeros");
  zeros->add_option("--tol", o.tol, "fail if the zero-sum residual exceeds this")->check(CLI::PositiveNumber);
  add_cell(zeros, o);
  zeros->callback([&] {
    action = [&] {
      const io::StateFile f = io::read_state(state_path);
      const ZeroSet zs = zeros_of(f, o);
      io::write_zeros(o.out, zs);
      if (!svg_path.empty()) io::write_atomic(svg_path, io::render_svg(zs));
      out << zs.zeros.size() << " zeros, M = " << zs.m << ", N = " << zs.n << ", residual " << zs.residual << "\n";
      const double tol = o.tol > 0.0 ? o.tol : kSumConstraintTol;
      if (zs.residual > tol) throw VerificationFailure("zero-sum residual exceeds tolerance");
    };
  });

  // reconstruct
  auto* reconstruct = app.add_subcommand("reconstruct", "rebuild a state from its zeros");
  reconstruct->add_option("--zeros", zeros_path, "zeros CSV")->required();
  reconstruct->add_option("--lambda", o.lambda, "scale parameter")->check(CLI::PositiveNumber);
  reconstruct->add_option("--out", o.out, "output state JSON")->required();
  add_cell(reconstruct, o);
  reconstruct->callback([&] {
    action = [&] {
      ReconstructionInput in;
      in.zeros = io::read_zeros(zeros_path);
      int d = 0;
      for (const Zero& z : in.zeros) d += z.multiplicity;
      in.params = o.params(d, o.lambda);
      const fs::path side = io::sidecar_path(zeros_path);
      if (fs::exists(side)) {
        const SumResidual r = io::sum_from_json(io::read_file(side));
        in.m = r.m;
        in.n = r.n;
      }
      write(reconstruct_from_zeros(in), o.lambda);
    };
  });

  // overlap
  std::string a1_text, a2_text, state2_path;
  auto* overlap = app.add_subcommand("overlap", "coherent-state overlap, or the inner product of two state files");
  overlap->add_option("--d", o.d, "dimension")->check(CLI::PositiveNumber);
  overlap->add_option("--lambda", o.lambda, "scale parameter")->check(CLI::PositiveNumber);
  auto* a1 = overlap->add_option("--A1", a1_text, "first coherent label");
  auto* a2 = overlap->add_option("--A2", a2_text, "second coherent label");
  auto* s1 = overlap->add_option("--state1", state_path, "first state JSON");
  auto* s2 = overlap->add_option("--state2", state2_path, "second state JSON");
  overlap->add_option("--tol", o.tol, "fail if closed form and direct sum differ by more")->check(CLI::PositiveNumber);
  a1->needs(a2);
  a2->needs(a1);
  s1->needs(s2);
  s2->needs(s1);
  a1->excludes(s1);
  s1->excludes(a1);
  overlap->callback([&] {
    action = [&] {
      if (!state_path.empty()) {
        const io::StateFile f1 = io::read_state(state_path);
        const io::StateFile f2 = io::read_state(state2_path);
        if (f1.state.dim() != f2.state.dim()) throw io::MalformedInput("states have different dimensions");
        out << "inner " << fmt(f1.state.inner(f2.state)) << "\n";
        return;
      }
      if (a1_text.empty()) throw CLI::RequiredError("--A1/--A2 or --state1/--state2");
      if (o.d < 1) throw CLI::RequiredError("--d");
      const SystemParams p = o.params(o.d, o.lambda);
      const cx x1 = label_arg(a1_text), x2 = label_arg(a2_text);
      const cx closed = coherent_overlap(x1, x2, p);
      const cx direct = coherent_state_closed(x1, p).inner(coherent_state_closed(x2, p));
      out << "closed " << fmt(closed) << "\ndirect " << fmt(direct) << "\ndifference " << std::abs(closed - direct)
          << "\n";
      const double tol = o.tol > 0.0 ? o.tol : 1e-9;
      if (std::abs(closed - direct) > tol) throw VerificationFailure("closed form disagrees with the direct sum");
    };
  });

  // verify
  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run the invariant checks on seeded random inputs");
  verify->add_option("--d", o.d, "dimension")->required()->check(CLI::Range(2, 16));
  verify->add_option("--seed", o.seed, "random seed");
  verify->add_option("--suite", suite, "suite name")->check(CLI::IsMember(verify::suite_names()));
  verify->callback([&] {
    action = [&] {
      const auto checks = verify::run_suite(suite, o.d, o.seed);
      int passed = 0;
      for (const auto& c : checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
        passed += c.passed;
      }
      out << passed << "/" << checks.size() << " checks passed\n";
      if (passed != static_cast<int>(checks.size())) throw VerificationFailure("some checks failed");
    };
  });

  // plot
  auto* plot = app.add_subcommand("plot", "SVG scatter of a state's zeros in the cell");
  plot->add_option("--state", state_path, "state JSON")->required();
  plot->add_option("--overlay", overlay_path, "second state drawn with triangles");
  plot->add_option("--out", o.out, "output SVG")->required();
  add_cell(plot, o);
  plot->callback([&] {
    action = [&] {
      const ZeroSet zs = zeros_of(io::read_state(state_path), o);
      if (!overlay_path.empty()) {
        const ZeroSet extra = zeros_of(io::read_state(overlay_path), o);
        io::write_atomic(o.out, io::render_svg(zs, &extra));
      } else {
        io::write_atomic(o.out, io::render_svg(zs));
      }
      out << "wrote " << o.out << "\n";
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    action();
    return kOk;
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const ConstraintViolation& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const io::MalformedInput& e) {
    err << "malformed input: " << e.what() << "\n";
    return kMalformedInput;
  } catch (const CLI::Error& e) {
    err << "usage error: missing " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}

}  // namespace fqa::cli
