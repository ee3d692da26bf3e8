#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "ncalg/reports.hpp"

namespace {

using ncalg::json;

json load_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ncalg::FormatError("cannot open input file: " + path);
  try {
    return json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ncalg::FormatError(std::string("bad JSON in ") + path + ": " +
                             e.what());
  }
}

std::string load_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ncalg::FormatError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/* The report goes to stdout (and optionally a file), byte-identically for
 * identical inputs; anything timing-dependent stays on stderr. */
void emit(const json& report, const std::string& output_path) {
  const std::string text = report.dump(2) + "\n";
  std::fwrite(text.data(), 1, text.size(), stdout);
  std::fflush(stdout);
  if (!output_path.empty()) {
    std::ofstream f(output_path, std::ios::binary);
    if (!f) throw ncalg::FormatError("cannot open output file: " + output_path);
    f << text;
  }
}

struct Options {
  std::uint64_t prime = 0;
  bool rationals = false;
  std::uint64_t seed = 0;
  std::uint64_t trials = 8;
  std::uint64_t dmax = 0;
  std::uint64_t d = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::string input;
  std::string output;
  std::string formula;
  std::string verify_path;
};

std::optional<ncalg::FieldSpec> field_from_flags(const CLI::App* sub,
                                                 const Options& o) {
  const bool have_prime = sub->count("--prime") > 0;
  if (have_prime && o.rationals)
    throw ncalg::PreconditionError("--prime and --rationals conflict");
  if (have_prime) return ncalg::FieldSpec::prime_field(o.prime);
  if (o.rationals) return ncalg::FieldSpec::rationals();
  return std::nullopt;
}

std::optional<ncalg::FieldSpec> field_in(const json& j) {
  if (!j.is_object() || !j.contains("field")) return std::nullopt;
  return ncalg::field_from_json(j["field"]);
}

int run(int argc, char** argv) {
  Options o;
  CLI::App app{
      "Exact blow-up tests for matrix pencils: null-cone membership, "
      "skew-field invertibility, ncrank bounds, hard lower-bound instances, "
      "quiver semistability, and rational identity testing."};
  app.require_subcommand(0, 1);
  app.add_option("--verify", o.verify_path,
                 "re-verify every certificate in a serialized report, then "
                 "exit 0 (ok) or 1");

  const auto add_field = [&](CLI::App* s) {
    s->add_option("--prime", o.prime,
                  "work over GF(p) for this prime (default 2305843009213693951)");
    s->add_flag("--rationals", o.rationals, "work over the rationals");
  };
  const auto add_common = [&](CLI::App* s) {
    add_field(s);
    s->add_option("--seed", o.seed, "RNG seed (default 0)");
    s->add_option("--trials", o.trials, "random samples per decision");
    s->add_option("--output", o.output, "also write the report to this file");
  };

  auto* nullcone = app.add_subcommand(
      "nullcone", "membership of a square linear pencil in the null cone");
  add_common(nullcone);
  nullcone->add_option("--input", o.input, "pencil JSON file")->required();

  auto* ncrank = app.add_subcommand(
      "ncrank", "lower bound on the noncommutative rank of a pencil");
  add_common(ncrank);
  ncrank->add_option("--input", o.input, "pencil JSON file")->required();
  ncrank->add_option("--dmax", o.dmax, "largest blow-up size to sample");

  auto* invertible = app.add_subcommand(
      "invertible", "invertibility of a square pencil over the free skew field");
  add_common(invertible);
  invertible->add_option("--input", o.input, "pencil JSON file")->required();

  auto* rit = app.add_subcommand(
      "rit", "randomized rational identity test for a formula");
  add_common(rit);
  rit->add_option("--formula", o.formula, "formula text, e.g. \"t1*t2 - t2*t1\"");
  rit->add_option("--input", o.input, "file holding the formula text");

  auto* hard = app.add_subcommand(
      "hard-instance", "build and verify the d-th hard lower-bound instance");
  add_common(hard);
  hard->add_option("--d", o.d, "instance parameter (pencil size d*d-1)")
      ->required();

  auto* quiver = app.add_subcommand("quiver", "quiver semistability tests");
  quiver->require_subcommand(1);
  auto* qcheck = quiver->add_subcommand(
      "check", "weight-semistability of a quiver representation");
  add_common(qcheck);
  qcheck->add_option("--input", o.input, "quiver JSON file")->required();
  auto* qpq = quiver->add_subcommand(
      "pq", "semistability of a tuple of p x q matrices (Kronecker quiver)");
  add_common(qpq);
  qpq->add_option("--input", o.input, "JSON file with {\"matrices\": [...]}")
      ->required();

  auto* bounds = app.add_subcommand(
      "bounds", "degree bounds for the invariants at size n, m matrices");
  bounds->add_option("--n", o.n, "matrix size")->required();
  bounds->add_option("--m", o.m, "number of pencil variables")->required();
  bounds->add_option("--output", o.output, "also write the report to this file");

  auto* selftest = app.add_subcommand(
      "selftest", "run every property suite and report per-suite results");
  add_common(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    (void)app.exit(e);
    return 2;
  }

  if (!o.verify_path.empty()) {
    if (!app.get_subcommands().empty())
      throw ncalg::FormatError("--verify cannot be combined with a command");
    const json rep = load_json_file(o.verify_path);
    const auto outcome = ncalg::verify_report(rep);
    emit(ncalg::verify_outcome_to_json(ncalg::require_str(rep, "command"),
                                       outcome),
         o.output);
    return outcome.ok ? 0 : 1;
  }
  if (app.get_subcommands().empty()) {
    std::fputs(app.help().c_str(), stderr);
    return 2;
  }

  if (app.got_subcommand(bounds)) {
    emit(ncalg::bounds_report(o.n, o.m), o.output);
    return 0;
  }

  /* hard instances default to the acceptance-grade sample count */
  if (app.got_subcommand(hard) && hard->count("--trials") == 0) o.trials = 500;
  if (o.trials == 0)
    throw ncalg::PreconditionError("--trials must be at least 1");
  const auto trials = static_cast<std::size_t>(o.trials);

  json report;
  if (app.got_subcommand(nullcone)) {
    const json in = load_json_file(o.input);
    const auto fs =
        ncalg::resolve_field(field_in(in), field_from_flags(nullcone, o));
    report = ncalg::nullcone_report(fs, in, trials, o.seed);
  } else if (app.got_subcommand(ncrank)) {
    const json in = load_json_file(o.input);
    const auto fs =
        ncalg::resolve_field(field_in(in), field_from_flags(ncrank, o));
    std::optional<std::size_t> dmax;
    if (ncrank->count("--dmax")) dmax = static_cast<std::size_t>(o.dmax);
    report = ncalg::ncrank_report(fs, in, dmax, trials, o.seed);
  } else if (app.got_subcommand(invertible)) {
    const json in = load_json_file(o.input);
    const auto fs =
        ncalg::resolve_field(field_in(in), field_from_flags(invertible, o));
    report = ncalg::invertible_report(fs, in, trials, o.seed);
  } else if (app.got_subcommand(rit)) {
    std::string text = o.formula;
    if (text.empty() && !o.input.empty()) text = load_text_file(o.input);
    if (text.empty())
      throw ncalg::FormatError("rit needs --formula or --input");
    const auto fs =
        ncalg::resolve_field(std::nullopt, field_from_flags(rit, o));
    report = ncalg::rit_report(fs, text, trials, o.seed);
  } else if (app.got_subcommand(hard)) {
    const auto fs =
        ncalg::resolve_field(std::nullopt, field_from_flags(hard, o));
    report = ncalg::hard_instance_report(fs, static_cast<std::size_t>(o.d),
                                         trials, o.seed);
  } else if (quiver->got_subcommand(qcheck)) {
    const json in = load_json_file(o.input);
    const auto fs =
        ncalg::resolve_field(field_in(in), field_from_flags(qcheck, o));
    report = ncalg::quiver_check_report(fs, in, trials, o.seed);
  } else if (quiver->got_subcommand(qpq)) {
    const json in = load_json_file(o.input);
    const auto fs =
        ncalg::resolve_field(field_in(in), field_from_flags(qpq, o));
    report = ncalg::quiver_pq_report(fs, in, trials, o.seed);
  } else {
    const auto fs =
        ncalg::resolve_field(std::nullopt, field_from_flags(selftest, o));
    report = ncalg::selftest_report(fs, trials, o.seed);
    emit(report, o.output);
    return report["passed"].get<bool>() ? 0 : 1;
  }

  emit(report, o.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  const auto t0 = std::chrono::steady_clock::now();
  int rc = 0;
  try {
    rc = run(argc, argv);
  } catch (const ncalg::FormatError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    rc = 2;
  } catch (const ncalg::PreconditionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    rc = 3;
  } catch (const ncalg::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    rc = 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    rc = 1;
  }
  const std::chrono::duration<double> dt =
      std::chrono::steady_clock::now() - t0;
  std::fprintf(stderr, "wall time: %.3f s\n", dt.count());
  return rc;
}
