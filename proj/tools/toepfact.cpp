// toepfact: command-line driver for the Toeplitz/Hankel decomposition library.
//
// Exit codes: 0 ok, 1 residual above tolerance (or failed certificate), 2 non-generic
// input, 3 no convergence, 4 parse / I/O / usage error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <toepfact/toepfact.hpp>

namespace tf = toepfact;

namespace {

enum ExitCode : int { ok = 0, tolerance_fail = 1, non_generic = 2, no_convergence = 3, io_error = 4 };

struct io_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_failure("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw io_failure("write to stdout failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_failure("cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) throw io_failure("write to '" + path + "' failed");
}

tf::DenseMatrix read_matrix(const std::string& path) {
  try {
    return tf::parse_matrix(read_text(path));
  } catch (const tf::parse_error& e) {
    throw tf::parse_error(path + ": " + e.what());
  }
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

// gen ----------------------------------------------------------------------

struct GenArgs {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string kind = "generic";
  std::string out;
};

tf::DenseMatrix generate(const GenArgs& g) {
  if (g.n == 0) throw usage_error("--n must be at least 1");
  tf::Rng rng(g.seed);
  if (g.kind == "generic") return rng.matrix(g.n);
  if (g.kind == "toeplitz") return tf::densify(rng.toeplitz(g.n));
  if (g.kind == "hankel") return tf::densify(rng.hankel(g.n));
  if (g.kind == "circulant") return tf::densify(rng.circulant(g.n));
  if (g.kind == "centrosym") return rng.centrosymmetric(g.n);
  throw usage_error("unknown kind '" + g.kind + "'");
}

int run_gen(const GenArgs& g) {
  write_text(g.out, tf::serialize_matrix(generate(g)));
  return ok;
}

// decompose ----------------------------------------------------------------

struct DecomposeArgs {
  std::string input;
  std::string method = "ge";
  std::string kind = "toeplitz";
  std::size_t r = 0;
  std::uint64_t seed = 0;
  double tol = -1.0;
  std::string out;
  bool retry = false;
  std::size_t max_restarts = 20;
};

double default_tolerance_for(const std::string& method) {
  if (method == "gauss-newton") return 1e-8;
  if (method == "closed-form2") return 1e-12;
  return 1e-10;
}

template <class Spec>
tf::FactorChain chain_from_tuple(const tf::StructuredTuple<Spec>& tuple) {
  tf::FactorChain chain;
  chain.n = tuple.n;
  for (const auto& f : tuple.factors) chain.factors.emplace_back(f);
  return chain;
}

int run_decompose(const DecomposeArgs& d) {
  const auto a = read_matrix(d.input);
  const std::size_t n = a.size();
  const double tol = d.tol >= 0.0 ? d.tol : default_tolerance_for(d.method);
  const bool hankel = d.kind == "hankel";

  tf::ChainDocument doc;
  doc.method = d.method;
  doc.kind = d.kind;
  doc.seed = d.seed;

  if (d.method == "ge") {
    const auto kind = hankel ? tf::FactorKind::hankel : tf::FactorKind::toeplitz;
    if (d.retry) {
      try {
        doc.chain = hankel ? tf::hankel_permutation_decompose(a) : tf::toeplitz_permutation_decompose(a);
      } catch (const tf::non_generic_input& e) {
        std::cerr << "note: " << e.what() << "; retrying with a seeded Toeplitz pre-multiplier\n";
        doc.chain = tf::ge_decompose_with_retry(a, kind, d.seed);
        doc.method = "ge-retry";
      }
    } else {
      doc.chain = hankel ? tf::hankel_permutation_decompose(a) : tf::toeplitz_permutation_decompose(a);
    }
  } else if (d.method == "gauss-newton") {
    const std::size_t r = d.r ? d.r : tf::minimal_factor_count(n);
    if (r < tf::minimal_factor_count(n))
      std::cerr << "warning: r = " << r << " is below floor(n/2)+1 = " << tf::minimal_factor_count(n)
                << "; generic matrices are not reachable\n";
    tf::GaussNewtonConfig cfg;
    cfg.seed = d.seed;
    cfg.residual_tolerance = std::max(tol, 100 * std::numeric_limits<double>::epsilon());
    cfg.max_restarts = d.max_restarts;
    if (hankel) {
      auto res = tf::gauss_newton_hankel_decompose(a, r, cfg);
      doc.chain = chain_from_tuple(res.tuple);
      std::cerr << "restarts " << res.restarts << ", iterations " << res.iterations << '\n';
    } else {
      auto res = tf::gauss_newton_decompose(a, r, cfg);
      doc.chain = chain_from_tuple(res.tuple);
      std::cerr << "restarts " << res.restarts << ", iterations " << res.iterations << '\n';
    }
  } else if (d.method == "closed-form2") {
    if (n != 2 || hankel) throw usage_error("closed-form2 needs a 2 x 2 matrix and --kind toeplitz");
    doc.chain = chain_from_tuple(tf::closed_form_2x2(a, d.seed).tuple);
  } else {
    throw usage_error("unknown method '" + d.method + "'");
  }

  const auto res = tf::chain_residual(doc.chain, a, d.seed);
  doc.residual = res.value;
  doc.residual_absolute = res.absolute;
  write_text(d.out, tf::serialize_chain(doc));

  const bool pass = res.value <= tol;
  std::cerr << "factors: " << doc.chain.count_toeplitz() << " toeplitz, " << doc.chain.count_hankel()
            << " hankel, " << doc.chain.count_permutation() << " permutation"
            << (doc.chain.leading_permutation ? ", leading exchange" : "") << '\n'
            << "residual " << fmt(res.value) << (res.absolute ? " absolute" : " relative")
            << (res.probed ? " (probed)" : "") << ", tol " << fmt(tol) << ": "
            << (pass ? "pass" : "FAIL") << '\n';
  return pass ? ok : tolerance_fail;
}

// verify -------------------------------------------------------------------

struct VerifyArgs {
  std::string matrix;
  std::string chain;
  double tol = 1e-10;
  std::uint64_t seed = 0;
};

int run_verify(const VerifyArgs& v) {
  const auto a = read_matrix(v.matrix);
  tf::ChainDocument doc;
  try {
    doc = tf::parse_chain(read_text(v.chain));
  } catch (const tf::parse_error& e) {
    throw tf::parse_error(v.chain + ": " + e.what());
  }
  const auto res = tf::chain_residual(doc.chain, a, v.seed);
  const bool pass = res.value <= v.tol;
  std::cout << "residual " << fmt(res.value) << (res.absolute ? " absolute" : " relative")
            << (res.probed ? " probed" : "") << '\n'
            << "tolerance " << fmt(v.tol) << '\n'
            << "status " << (pass ? "pass" : "fail") << '\n';
  return pass ? ok : tolerance_fail;
}

// rank-cert ----------------------------------------------------------------

struct RankArgs {
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

int run_rank_cert(const RankArgs& a) {
  if (a.n < 2) throw usage_error("--n must be at least 2");
  const auto cert = tf::rank_certificate(a.n, a.seed);
  std::cout << "n " << cert.n << '\n'
            << "r " << cert.r << '\n'
            << "rank " << cert.rank << '\n'
            << "required " << cert.required_rank << '\n'
            << "sigma_ratio " << fmt(cert.smallest_ratio) << '\n'
            << "sharp " << (cert.sharp ? "yes" : "no") << '\n'
            << "status " << (cert.pass ? "pass" : "fail") << '\n';
  return cert.pass ? ok : tolerance_fail;
}

// export-lq ----------------------------------------------------------------

struct ExportArgs {
  std::string input;
  std::size_t r = 2;
  std::string out;
};

int run_export(const ExportArgs& e) {
  const auto a = read_matrix(e.input);
  if (a.size() < 2) throw usage_error("export-lq needs n >= 2");
  const auto sys = tf::build_linear_quadratic_system(a, e.r);
  write_text(e.out, tf::export_system(sys));
  auto& report = (e.out.empty() || e.out == "-") ? std::cerr : std::cout;
  report << sys.quadratics.size() << " quadratic, " << sys.linear_rows.size() << " linear\n";
  return ok;
}

// bench --------------------------------------------------------------------

struct BenchArgs {
  std::size_t max_n = 512;
  std::uint64_t seed = 0;
};

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_bench(const BenchArgs& b) {
  if (b.max_n < 64) throw usage_error("bench needs --n >= 64");
  std::cout << "task\tn\tseconds\tmetric\n";
  auto row = [](const std::string& task, std::size_t n, double secs, double metric) {
    std::cout << task << '\t' << n << '\t' << fmt(secs) << '\t' << fmt(metric) << '\n';
    std::cout.flush();
  };

  for (std::size_t n = 64; n <= b.max_n; n *= 2) {
    tf::Rng rng(tf::derive_seed(b.seed, n));
    const auto a = rng.matrix(n);
    tf::FactorChain chain;
    const double t = seconds([&] { chain = tf::toeplitz_permutation_decompose(a); });
    row("ge", n, t, tf::chain_residual(chain, a, b.seed).value);
  }

  for (std::size_t n = 2; n <= 8; ++n) {
    tf::Rng rng(tf::derive_seed(b.seed, 1000 + n));
    const auto a = rng.matrix(n);
    tf::GaussNewtonConfig cfg;
    cfg.seed = b.seed;
    double residual = std::numeric_limits<double>::quiet_NaN();
    const double t = seconds([&] {
      try {
        residual = tf::gauss_newton_decompose(a, tf::minimal_factor_count(n), cfg).residual;
      } catch (const tf::no_convergence& e) {
        residual = e.best_residual();
      }
    });
    row("gauss-newton", n, t, residual);
  }

  const std::size_t n = 4096;
  tf::Rng rng(tf::derive_seed(b.seed, n));
  const auto t = rng.toeplitz(n);
  const auto dense = tf::densify(t);
  const auto x = rng.complex_vector(n);
  tf::Vector y_fast, y_dense;
  double fast = 1e300, slow = 1e300;
  for (int rep = 0; rep < 3; ++rep) {
    fast = std::min(fast, seconds([&] { y_fast = tf::toeplitz_matvec(t, x); }));
    slow = std::min(slow, seconds([&] { y_dense = tf::matvec(dense, x); }));
  }
  row("matvec-fft", n, fast, tf::relative_residual(y_fast, y_dense));
  row("matvec-dense", n, slow, 0.0);
  row("matvec-speedup", n, 0.0, slow / fast);
  return ok;
}

// screen -------------------------------------------------------------------

struct ScreenArgs {
  std::string input;
  double tol = tf::default_tolerance;
};

int run_screen(const ScreenArgs& s) {
  const auto a = read_matrix(s.input);
  const auto rep = tf::decomposability_screen(a, s.tol);
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::cout << "centrosymmetric " << yn(rep.centrosymmetric.holds) << " deviation "
            << fmt(rep.centrosymmetric.deviation) << '\n'
            << "allones_eigvec_residual " << fmt(rep.allones_eigvec_residual)
            << (rep.allones_zero_image ? " zero-image" : "") << '\n'
            << "symmetric_toeplitz " << yn(rep.symmetric_toeplitz.holds) << " deviation "
            << fmt(rep.symmetric_toeplitz.deviation) << '\n'
            << "persymmetric_hankel " << yn(rep.persymmetric_hankel.holds) << " deviation "
            << fmt(rep.persymmetric_hankel.deviation) << '\n'
            << "circulant " << yn(rep.circulant.holds) << " deviation " << fmt(rep.circulant.deviation)
            << '\n'
            << "ruled_out symmetric-toeplitz " << yn(rep.symmetric_toeplitz_ruled_out) << '\n'
            << "ruled_out persymmetric-hankel " << yn(rep.persymmetric_hankel_ruled_out) << '\n'
            << "ruled_out circulant " << yn(rep.circulant_ruled_out) << '\n';
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toeplitz and Hankel matrix decompositions"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a seeded random matrix");
  gen_cmd->add_option("--n", gen.n, "Dimension")->required();
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--kind", gen.kind, "Matrix class")
      ->check(CLI::IsMember({"generic", "toeplitz", "hankel", "circulant", "centrosym"}));
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

  DecomposeArgs dec;
  auto* dec_cmd = app.add_subcommand("decompose", "Factor a matrix and write the chain");
  dec_cmd->add_option("input", dec.input, "Matrix file, '-' for stdin")->required();
  dec_cmd->add_option("--method", dec.method, "ge, gauss-newton or closed-form2")
      ->check(CLI::IsMember({"ge", "gauss-newton", "closed-form2"}));
  dec_cmd->add_option("--kind", dec.kind, "Factor class")->check(CLI::IsMember({"toeplitz", "hankel"}));
  dec_cmd->add_option("--r", dec.r, "Number of factors for gauss-newton (default floor(n/2)+1)");
  dec_cmd->add_option("--seed", dec.seed, "Random seed");
  dec_cmd->add_option("--tol", dec.tol, "Residual tolerance (default depends on method)");
  dec_cmd->add_option("--out", dec.out, "Output chain file (default stdout)");
  dec_cmd->add_option("--max-restarts", dec.max_restarts, "Restart budget for gauss-newton");
  dec_cmd->add_flag("--retry", dec.retry, "ge only: on a vanishing pivot, retry via a seeded Toeplitz pre-multiplier");

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Check a chain against a matrix");
  ver_cmd->add_option("matrix", ver.matrix, "Matrix file")->required();
  ver_cmd->add_option("chain", ver.chain, "Chain file")->required();
  ver_cmd->add_option("--tol", ver.tol, "Residual tolerance");
  ver_cmd->add_option("--seed", ver.seed, "Probe seed for n > 128");

  RankArgs rank;
  auto* rank_cmd = app.add_subcommand("rank-cert", "Jacobian rank certificate at the special point");
  rank_cmd->add_option("--n", rank.n, "Dimension")->required();
  rank_cmd->add_option("--seed", rank.seed, "Seed for the t values");

  ExportArgs exp;
  auto* exp_cmd = app.add_subcommand("export-lq", "Write the linear-quadratic system for r = 2");
  exp_cmd->add_option("input", exp.input, "Matrix file")->required();
  exp_cmd->add_option("--r", exp.r, "Number of factors (only 2 is supported)");
  exp_cmd->add_option("--out", exp.out, "Output file (default stdout)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Timing table (tab separated)");
  bench_cmd->add_option("--n", bench.max_n, "Largest ge dimension (>= 64)");
  bench_cmd->add_option("--seed", bench.seed, "Random seed");

  ScreenArgs scr;
  auto* scr_cmd = app.add_subcommand("screen", "Report restricted factor classes ruled out for a matrix");
  scr_cmd->add_option("input", scr.input, "Matrix file")->required();
  scr_cmd->add_option("--tol", scr.tol, "Structure tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : io_error;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*dec_cmd) return run_decompose(dec);
    if (*ver_cmd) return run_verify(ver);
    if (*rank_cmd) return run_rank_cert(rank);
    if (*exp_cmd) return run_export(exp);
    if (*bench_cmd) return run_bench(bench);
    if (*scr_cmd) return run_screen(scr);
  } catch (const tf::non_generic_input& e) {
    std::cerr << "error: non-generic input: " << e.what() << '\n';
    return non_generic;
  } catch (const tf::no_convergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return no_convergence;
  } catch (const tf::parse_error& e) {
    std::cerr << "error: parse: " << e.what() << '\n';
    return io_error;
  } catch (const io_failure& e) {
    std::cerr << "error: i/o: " << e.what() << '\n';
    return io_error;
  } catch (const usage_error& e) {
    std::cerr << "error: usage: " << e.what() << '\n';
    return io_error;
  } catch (const tf::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return io_error;
  }
  return io_error;
}
