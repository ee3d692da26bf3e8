#include "ncalg/reports.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ncalg/formula.hpp"
#include "ncalg/hard_instance.hpp"
#include "ncalg/linalg.hpp"
#include "ncalg/nullcone.hpp"
#include "ncalg/quiver.hpp"
#include "ncalg/selftest.hpp"

namespace ncalg {

namespace {

/* Size of the sampling set behind every Monte Carlo bound: the whole prime
 * field, or the integer range rationals are drawn from. */
double sample_set_size(const FieldSpec& fs) {
  return fs.kind == FieldSpec::Kind::Prime
             ? static_cast<double>(fs.prime)
             : static_cast<double>(kDefaultPrime);
}

json bound_json(double degree, const FieldSpec& fs, std::size_t trials) {
  const double per = degree / sample_set_size(fs);
  json j;
  j["per_trial"] = per;
  j["total"] = std::min(1.0, per * static_cast<double>(trials));
  return j;
}

/* Blow-up assembled through kron/add only. The production kernel writes
 * entries directly in a fused loop, so agreement here is a genuine
 * cross-check, and ranks/determinants of the result go through the serial
 * elimination in ncalg::ref. */
template <class F>
Matrix<F> serial_blowup(const Pencil<F>& pencil,
                        const std::vector<Matrix<F>>& tuple, std::size_t p,
                        std::size_t q) {
  const F& fld = pencil.field;
  Matrix<F> acc(fld, pencil.rows * p, pencil.cols * q);
  for (std::size_t k = 0; k < pencil.vars(); ++k)
    acc = acc + kronecker(pencil.coeffs[k], tuple[k]);
  if (pencil.constant)
    acc = acc + kronecker(*pencil.constant, Matrix<F>::identity(fld, p));
  return acc;
}

template <class F>
json tuple_to_json(const std::vector<Matrix<F>>& tuple) {
  json arr = json::array();
  for (const auto& t : tuple) arr.push_back(matrix_to_json(t));
  return arr;
}

template <class F>
json nullcone_report_impl(F fld, const json& pencil_json, std::size_t trials,
                          std::uint64_t seed) {
  const auto pencil = pencil_from_json(fld, pencil_json);
  const auto v = in_nullcone(pencil, trials, seed);
  json j;
  j["command"] = "nullcone";
  j["field"] = field_to_json(fld.spec());
  json in;
  in["pencil"] = pencil_to_json(pencil);
  in["trials"] = trials;
  in["seed"] = seed;
  j["inputs"] = std::move(in);
  j["blowup_size"] = v.blowup_size;
  j["invariant_degree"] = pencil.rows * v.blowup_size;
  j["verdict"] = v.in_null_cone ? "InNullCone" : "NotInNullCone";
  if (!v.in_null_cone) {
    j["witness"] = witness_to_json(*v.witness);
    j["f_value"] = fld.to_string(*v.det_value);
  }
  j["failure_bound"] = bound_json(
      static_cast<double>(pencil.rows * v.blowup_size), fld.spec(), trials);
  return j;
}

template <class F>
json ncrank_report_impl(F fld, const json& pencil_json,
                        std::optional<std::size_t> dmax, std::size_t trials,
                        std::uint64_t seed) {
  const auto pencil = pencil_from_json(fld, pencil_json);
  const std::size_t dm = dmax ? *dmax : default_dmax(pencil.rows, pencil.cols);
  const auto b = ncrank_lower_bound(pencil, dm, trials, seed);
  const std::size_t nmin = std::min(pencil.rows, pencil.cols);
  json j;
  j["command"] = "ncrank";
  j["field"] = field_to_json(fld.spec());
  json in;
  in["pencil"] = pencil_to_json(pencil);
  in["dmax"] = dm;
  in["trials"] = trials;
  in["seed"] = seed;
  j["inputs"] = std::move(in);
  json per = json::array();
  for (const auto& [d, r] : b.per_d) {
    json e;
    e["d"] = d;
    e["achieved_rank"] = r;
    e["rank_over_d"] = (r + d - 1) / d;
    e["per_trial_failure_bound"] =
        static_cast<double>(nmin * d) / sample_set_size(fld.spec());
    per.push_back(std::move(e));
  }
  j["per_d"] = std::move(per);
  j["ncrank_lower_bound"] = b.best;
  j["note"] =
      "lower bound only: sampled blow-up ranks never overestimate, so the "
      "bound holds regardless of trial count";
  return j;
}

template <class F>
json invertible_report_impl(F fld, const json& pencil_json, std::size_t trials,
                            std::uint64_t seed) {
  const auto pencil = pencil_from_json(fld, pencil_json);
  const auto v = skewfield_invertible(pencil, trials, seed);
  json j;
  j["command"] = "invertible";
  j["field"] = field_to_json(fld.spec());
  json in;
  in["pencil"] = pencil_to_json(pencil);
  in["trials"] = trials;
  in["seed"] = seed;
  j["inputs"] = std::move(in);
  j["blowup_size"] = v.blowup_size;
  j["verdict"] = v.invertible ? "Invertible" : "SingularWhp";
  if (v.invertible) {
    j["witness"] = witness_to_json(*v.witness);
    const auto dv = det(
        blowup_eval(pencil, v.witness->tuple, v.witness->p, v.witness->q));
    j["det_value"] = fld.to_string(dv);
  }
  j["failure_bound"] = bound_json(
      static_cast<double>(pencil.rows * v.blowup_size), fld.spec(), trials);
  return j;
}

template <class F>
json rit_report_impl(F fld, const Formula& f, std::size_t trials,
                     std::uint64_t seed) {
  const auto v = rit(fld, f, trials, seed);
  json j;
  j["command"] = "rit";
  j["field"] = field_to_json(fld.spec());
  json in;
  in["formula"] = to_text(f);
  in["trials"] = trials;
  in["seed"] = seed;
  j["inputs"] = std::move(in);
  j["formula_size"] = f.size();
  j["inv_height"] = f.inv_height();
  j["vars"] = f.max_var();
  j["dimension"] = v.dimension;
  j["verdict"] = to_string(v.status);
  j["defined_trials"] = v.defined_trials;
  if (v.status == RitStatus::NonZero) {
    j["witness_trial"] = *v.witness_trial;
    j["witness_tuple"] = tuple_to_json(v.witness_tuple);
    j["witness_value"] = matrix_to_json(*v.witness_value);
  }
  const double degree =
      static_cast<double>(f.size() + 1) *
      std::pow(static_cast<double>(v.dimension),
               static_cast<double>(f.inv_height()));
  j["failure_bound"] = bound_json(degree, fld.spec(), trials);
  return j;
}

template <class F>
json hard_instance_report_impl(F fld, std::size_t d, std::size_t trials,
                               std::uint64_t seed) {
  const auto inst = make_hard_instance(fld, d);
  const auto rep = verify_hard_instance(inst, trials, seed);
  json j;
  j["command"] = "hard-instance";
  j["field"] = field_to_json(fld.spec());
  json in;
  in["d"] = d;
  in["trials"] = trials;
  in["seed"] = seed;
  j["inputs"] = std::move(in);
  j["n"] = rep.n;
  j["vars"] = inst.pencil.vars();
  j["pencil"] = pencil_to_json(inst.pencil);
  json canon;
  canon["tuple"] = tuple_to_json(inst.canonical_tuple);
  canon["det"] = fld.to_string(*rep.canonical_det);
  canon["invertible"] = rep.canonical_invertible;
  j["canonical"] = std::move(canon);
  json below = json::array();
  for (const auto& level : rep.below) {
    json e;
    e["k"] = level.k;
    e["trials"] = level.trials;
    e["singular"] = level.singular;
    e["kernel_exact"] = level.kernel_exact;
    json cert;
    cert["A"] = matrix_to_json(*level.cert_A);
    cert["Bs"] = tuple_to_json(level.cert_Bs);
    json vv = json::array();
    for (const auto& x : level.cert_v) vv.push_back(fld.to_string(x));
    cert["v"] = std::move(vv);
    e["certificate"] = std::move(cert);
    below.push_back(std::move(e));
  }
  j["below"] = std::move(below);
  j["delta_lower"] = rep.delta_lower;
  j["ok"] = rep.ok;
  j["failure_bound"] = bound_json(0.0, fld.spec(), trials);
  j["note"] =
      "every verdict-bearing fact above is an exact computation; sampling "
      "only selects which substitutions are inspected";
  return j;
}

json quiver_echo(const Quiver& q, const DimVector& dim, const Weight& weight) {
  json in;
  json vs = json::array();
  for (std::size_t x = 0; x < q.vertex_count(); ++x)
    vs.push_back(q.vertex_name(x));
  in["vertices"] = std::move(vs);
  json as = json::array();
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& ar = q.arrow(a);
    json e;
    e["name"] = ar.name;
    e["tail"] = q.vertex_name(ar.tail);
    e["head"] = q.vertex_name(ar.head);
    as.push_back(std::move(e));
  }
  in["arrows"] = std::move(as);
  json dj, wj;
  for (std::size_t x = 0; x < q.vertex_count(); ++x) {
    dj[q.vertex_name(x)] = dim[x];
    wj[q.vertex_name(x)] = weight[x];
  }
  in["dim"] = std::move(dj);
  in["weight"] = std::move(wj);
  return in;
}

template <class F>
json quiver_check_report_impl(F fld, const QuiverInput& qi, std::size_t trials,
                              std::uint64_t seed) {
  const auto rep = representation_from_json(fld, qi.quiver, qi.dim, qi.rep);
  const auto pencil =
      build_weight_pencil(fld, qi.quiver, qi.dim, qi.weight, rep);
  const auto v =
      is_semistable(fld, qi.quiver, qi.dim, qi.weight, rep, trials, seed);
  json j;
  j["command"] = "quiver check";
  j["field"] = field_to_json(fld.spec());
  json in = quiver_echo(qi.quiver, qi.dim, qi.weight);
  json rj;
  for (std::size_t a = 0; a < qi.quiver.arrow_count(); ++a)
    rj[qi.quiver.arrow(a).name] = matrix_to_json(rep[a]);
  in["rep"] = std::move(rj);
  in["trials"] = trials;
  in["seed"] = seed;
  j["inputs"] = std::move(in);
  j["pencil"] = pencil_to_json(pencil);
  j["pencil_size"] = v.pencil_size;
  j["pencil_vars"] = v.pencil_vars;
  j["blowup_size"] = v.blowup_size;
  j["verdict"] = v.semistable ? "Semistable" : "UnstableWhp";
  if (v.witness) {
    j["witness"] = witness_to_json(*v.witness);
    j["f_value"] = fld.to_string(*v.det_value);
  }
  j["failure_bound"] = bound_json(
      static_cast<double>(v.pencil_size * v.blowup_size), fld.spec(), trials);
  return j;
}

template <class F>
json quiver_pq_report_impl(F fld, const json& input, std::size_t trials,
                           std::uint64_t seed) {
  const json& ms = require_key(input, "matrices");
  if (!ms.is_array() || ms.empty())
    throw FormatError("pq: \"matrices\" must be a nonempty array");
  std::vector<Matrix<F>> X;
  X.reserve(ms.size());
  for (const auto& m : ms) X.push_back(matrix_from_json(fld, m));
  const auto v = pq_full_test(fld, X, trials, seed);
  const auto pencil = pq_weight_pencil(fld, X);
  json j;
  j["command"] = "quiver pq";
  j["field"] = field_to_json(fld.spec());
  json in;
  in["matrices"] = tuple_to_json(X);
  in["trials"] = trials;
  in["seed"] = seed;
  j["inputs"] = std::move(in);
  j["p"] = v.p;
  j["q"] = v.q;
  j["sigma"] = json::array({v.sigma_x, v.sigma_y});
  j["pencil"] = pencil_to_json(pencil);
  j["pencil_size"] = v.pencil_size;
  j["pencil_vars"] = v.pencil_vars;
  j["blowup_size"] = v.blowup_size;
  j["generator_degree_bound"] = v.generator_degree_bound;
  j["verdict"] = v.full ? "Semistable" : "UnstableWhp";
  if (v.witness) {
    j["witness"] = witness_to_json(*v.witness);
    j["f_value"] = fld.to_string(*v.det_value);
  }
  j["failure_bound"] = bound_json(
      static_cast<double>(v.pencil_size * v.blowup_size), fld.spec(), trials);
  return j;
}

}  // namespace

FieldSpec resolve_field(const std::optional<FieldSpec>& embedded,
                        const std::optional<FieldSpec>& from_flags) {
  if (embedded && from_flags) {
    if (!(*embedded == *from_flags))
      throw PreconditionError(
          "field named both in the input file and on the command line, and "
          "they disagree");
    return *from_flags;
  }
  if (from_flags) return *from_flags;
  if (embedded) return *embedded;
  return FieldSpec::prime_field(kDefaultPrime);
}

json nullcone_report(const FieldSpec& fs, const json& pencil_json,
                     std::size_t trials, std::uint64_t seed) {
  return with_field(fs, [&](auto fld) {
    return nullcone_report_impl(std::move(fld), pencil_json, trials, seed);
  });
}

json ncrank_report(const FieldSpec& fs, const json& pencil_json,
                   std::optional<std::size_t> dmax, std::size_t trials,
                   std::uint64_t seed) {
  return with_field(fs, [&](auto fld) {
    return ncrank_report_impl(std::move(fld), pencil_json, dmax, trials, seed);
  });
}

json invertible_report(const FieldSpec& fs, const json& pencil_json,
                       std::size_t trials, std::uint64_t seed) {
  return with_field(fs, [&](auto fld) {
    return invertible_report_impl(std::move(fld), pencil_json, trials, seed);
  });
}

json rit_report(const FieldSpec& fs, const std::string& formula_text,
                std::size_t trials, std::uint64_t seed) {
  const auto f = parse_formula(formula_text);
  return with_field(fs, [&](auto fld) {
    return rit_report_impl(std::move(fld), f, trials, seed);
  });
}

json hard_instance_report(const FieldSpec& fs, std::size_t d,
                          std::size_t trials, std::uint64_t seed) {
  return with_field(fs, [&](auto fld) {
    return hard_instance_report_impl(std::move(fld), d, trials, seed);
  });
}

json quiver_check_report(const FieldSpec& fs, const json& input,
                         std::size_t trials, std::uint64_t seed) {
  const auto qi = quiver_input_from_json(input);
  return with_field(fs, [&](auto fld) {
    return quiver_check_report_impl(std::move(fld), qi, trials, seed);
  });
}

json quiver_pq_report(const FieldSpec& fs, const json& input,
                      std::size_t trials, std::uint64_t seed) {
  return with_field(fs, [&](auto fld) {
    return quiver_pq_report_impl(std::move(fld), input, trials, seed);
  });
}

json bounds_report(std::uint64_t n, std::uint64_t m) {
  const auto b = degree_bounds(n, m);
  json j;
  j["command"] = "bounds";
  json in;
  in["n"] = n;
  in["m"] = m;
  j["inputs"] = std::move(in);
  j["delta_lower"] = b.delta_lower;
  j["delta_upper"] = b.delta_upper;
  j["gamma_lower"] = b.gamma_lower;
  j["gamma_upper"] = b.gamma_upper;
  j["beta_upper_char0"] = b.beta_upper_char0;
  j["beta_cap_char0"] = b.beta_cap_char0;
  j["note"] = "beta bounds assume characteristic zero";
  return j;
}

json selftest_report(const FieldSpec& fs, std::size_t trials,
                     std::uint64_t seed) {
  SelftestOptions o;
  o.field = fs;
  o.trials = trials;
  o.seed = seed;
  const auto rs = run_selftest(o);
  json j;
  j["command"] = "selftest";
  j["field"] = field_to_json(fs);
  json in;
  in["trials"] = trials;
  in["seed"] = seed;
  j["inputs"] = std::move(in);
  json suites = json::array();
  for (const auto& r : rs) {
    json e;
    e["name"] = r.name;
    e["instances"] = r.instances;
    e["failures"] = r.failures;
    if (r.per_trial_failure_bound)
      e["per_trial_failure_bound"] = *r.per_trial_failure_bound;
    if (!r.notes.empty()) e["notes"] = r.notes;
    suites.push_back(std::move(e));
  }
  j["suites"] = std::move(suites);
  j["passed"] = all_passed(rs);
  return j;
}

namespace {

struct Verifier {
  VerifyOutcome out;
  void problem(const std::string& p) { out.problems.push_back(p); }
  void check(bool ok, const std::string& p) {
    out.checked = true;
    if (!ok) problem(p);
  }
};

template <class F>
void verify_full_rank_witness(Verifier& v, const F& fld,
                              const Pencil<F>& pencil, const json& rep,
                              const char* value_key) {
  const auto w = witness_from_json(fld, require_key(rep, "witness"));
  const auto d = static_cast<std::size_t>(require_u64(rep, "blowup_size"));
  if (w.p != d || w.q != d) {
    v.check(false, "witness block shape disagrees with blowup_size");
    return;
  }
  if (w.tuple.size() != pencil.vars()) {
    v.check(false, "witness tuple length disagrees with pencil vars");
    return;
  }
  const std::size_t full = pencil.rows * w.p;
  v.check(w.achieved_rank == full, "achieved_rank is not the full rank");
  const auto acc = serial_blowup(pencil, w.tuple, w.p, w.q);
  v.check(ref::rank(acc) == full, "witness blow-up is not full rank");
  const auto dv = ref::det(acc);
  v.check(!fld.is_zero(dv), "witness determinant is zero");
  const auto stored = fld.from_string(require_str(rep, value_key));
  v.check(dv == stored, std::string(value_key) + " does not recompute");
}

template <class F>
void verify_nullcone_impl(Verifier& v, const F& fld, const json& rep) {
  const json& in = require_key(rep, "inputs");
  const auto pencil = pencil_from_json(fld, require_key(in, "pencil"));
  const auto verdict = require_str(rep, "verdict");
  if (verdict == "NotInNullCone") {
    verify_full_rank_witness(v, fld, pencil, rep, "f_value");
  } else if (verdict != "InNullCone") {
    v.check(false, "unknown verdict \"" + verdict + "\"");
  }
}

template <class F>
void verify_invertible_impl(Verifier& v, const F& fld, const json& rep) {
  const json& in = require_key(rep, "inputs");
  const auto pencil = pencil_from_json(fld, require_key(in, "pencil"));
  const auto verdict = require_str(rep, "verdict");
  if (verdict == "Invertible") {
    verify_full_rank_witness(v, fld, pencil, rep, "det_value");
  } else if (verdict != "SingularWhp") {
    v.check(false, "unknown verdict \"" + verdict + "\"");
  }
}

template <class F>
void verify_ncrank_impl(Verifier& v, const F& fld, const json& rep) {
  const json& in = require_key(rep, "inputs");
  const auto pencil = pencil_from_json(fld, require_key(in, "pencil"));
  const auto dmax = static_cast<std::size_t>(require_u64(in, "dmax"));
  const auto trials = static_cast<std::size_t>(require_u64(in, "trials"));
  const auto seed = require_u64(in, "seed");
  const auto b = ncrank_lower_bound(pencil, dmax, trials, seed);
  v.check(require_u64(rep, "ncrank_lower_bound") == b.best,
          "ncrank_lower_bound does not reproduce");
  const json& per = require_key(rep, "per_d");
  if (!per.is_array() || per.size() != b.per_d.size()) {
    v.check(false, "per_d has the wrong length");
    return;
  }
  for (std::size_t i = 0; i < b.per_d.size(); ++i) {
    v.check(require_u64(per[i], "d") == b.per_d[i].first &&
                require_u64(per[i], "achieved_rank") == b.per_d[i].second,
            "per_d entry " + std::to_string(i) + " does not reproduce");
  }
}

template <class F>
void verify_rit_impl(Verifier& v, const F& fld, const json& rep) {
  const json& in = require_key(rep, "inputs");
  const auto f = parse_formula(require_str(in, "formula"));
  v.check(require_u64(rep, "formula_size") == f.size(),
          "formula_size does not recompute");
  v.check(require_u64(rep, "inv_height") == f.inv_height(),
          "inv_height does not recompute");
  const std::size_t dim = 2 * (f.size() + 1) - 1;
  v.check(require_u64(rep, "dimension") == dim,
          "dimension does not recompute");
  const auto verdict = require_str(rep, "verdict");
  if (verdict == "NonZero") {
    const json& tj = require_key(rep, "witness_tuple");
    if (!tj.is_array() || tj.size() != f.max_var()) {
      v.check(false, "witness_tuple has the wrong length");
      return;
    }
    std::vector<Matrix<F>> tuple;
    for (const auto& m : tj) tuple.push_back(matrix_from_json(fld, m, dim, dim));
    const auto stored =
        matrix_from_json(fld, require_key(rep, "witness_value"), dim, dim);
    const auto val = evaluate(f, fld, tuple, dim);
    v.check(val.has_value(), "witness evaluation is undefined");
    if (val) {
      v.check(*val == stored, "witness_value does not recompute");
      v.check(!val->is_zero(), "witness_value is the zero matrix");
    }
  } else if (verdict != "ZeroWhp" && verdict != "UndefinedWhp") {
    v.check(false, "unknown verdict \"" + verdict + "\"");
  }
}

template <class F>
void verify_hard_instance_impl(Verifier& v, const F& fld, const json& rep) {
  const json& in = require_key(rep, "inputs");
  const auto d = static_cast<std::size_t>(require_u64(in, "d"));
  const auto inst = make_hard_instance(fld, d);
  v.check(pencil_to_json(inst.pencil).dump() ==
              require_key(rep, "pencil").dump(),
          "pencil does not match the built-in instance");
  const json& canon = require_key(rep, "canonical");
  v.check(tuple_to_json(inst.canonical_tuple).dump() ==
              require_key(canon, "tuple").dump(),
          "canonical tuple does not match the built-in instance");
  const auto acc = serial_blowup(inst.pencil, inst.canonical_tuple, d, d);
  const auto dv = ref::det(acc);
  v.check(dv == fld.from_string(require_str(canon, "det")),
          "canonical det does not recompute");
  v.check(!fld.is_zero(dv) == require_bool(canon, "invertible"),
          "canonical invertibility flag is wrong");
  const json& below = require_key(rep, "below");
  if (!below.is_array() || below.size() != d - 1) {
    v.check(false, "below must list every block size 1..d-1");
    return;
  }
  for (const auto& level : below) {
    const auto k = static_cast<std::size_t>(require_u64(level, "k"));
    if (k == 0 || k >= d) {
      v.check(false, "below entry has block size out of range");
      continue;
    }
    v.check(require_u64(level, "singular") == require_u64(level, "trials"),
            "level " + std::to_string(k) +
                ": not every sampled substitution was singular");
    const json& cert = require_key(level, "certificate");
    const auto A = matrix_from_json(fld, require_key(cert, "A"), k, k);
    const json& bsj = require_key(cert, "Bs");
    if (!bsj.is_array() || bsj.size() + 1 != d) {
      v.check(false, "certificate Bs has the wrong length");
      continue;
    }
    std::vector<Matrix<F>> Bs;
    for (const auto& bj : bsj) Bs.push_back(matrix_from_json(fld, bj, k, k));
    const json& vj = require_key(cert, "v");
    if (!vj.is_array() || vj.size() != d * k) {
      v.check(false, "certificate v has the wrong length");
      continue;
    }
    std::vector<typename F::Elem> vec;
    for (const auto& e : vj) vec.push_back(elem_from_json(fld, e));

    std::vector<typename F::Elem> u(k, fld.zero());
    u[0] = fld.one();
    const auto expect = charpoly_kernel_vector(d, A, u);
    bool same = expect.size() == vec.size();
    for (std::size_t i = 0; same && i < vec.size(); ++i)
      same = expect[i] == vec[i];
    v.check(same, "certificate v is not the charpoly kernel vector");

    const auto N = power_block_matrix(d, A, Bs);
    bool nonzero = false, annihilated = true;
    for (const auto& e : vec)
      if (!fld.is_zero(e)) nonzero = true;
    for (std::size_t r = 0; r < N.rows(); ++r) {
      auto s = fld.zero();
      for (std::size_t c = 0; c < N.cols(); ++c)
        s = fld.add(s, fld.mul(N(r, c), vec[c]));
      if (!fld.is_zero(s)) annihilated = false;
    }
    v.check(nonzero, "certificate v is the zero vector");
    v.check(annihilated, "certificate residual is nonzero");
    v.check(require_bool(level, "kernel_exact") == (nonzero && annihilated),
            "kernel_exact flag is wrong");
  }
  v.check(require_u64(rep, "delta_lower") ==
              (require_bool(rep, "ok") ? d : 0),
          "delta_lower disagrees with the ok flag");
}

template <class F>
void verify_quiver_check_impl(Verifier& v, const F& fld, const json& rep) {
  const json& in = require_key(rep, "inputs");
  const auto qi = quiver_input_from_json(in);
  const auto r = representation_from_json(fld, qi.quiver, qi.dim, qi.rep);
  const auto pencil =
      build_weight_pencil(fld, qi.quiver, qi.dim, qi.weight, r);
  v.check(pencil_to_json(pencil).dump() == require_key(rep, "pencil").dump(),
          "weight pencil does not rebuild from the echoed input");
  const auto verdict = require_str(rep, "verdict");
  if (verdict == "Semistable") {
    if (pencil.rows == 0) return;  /* empty pencil: vacuously semistable */
    verify_full_rank_witness(v, fld, pencil, rep, "f_value");
  } else if (verdict != "UnstableWhp") {
    v.check(false, "unknown verdict \"" + verdict + "\"");
  }
}

template <class F>
void verify_quiver_pq_impl(Verifier& v, const F& fld, const json& rep) {
  const json& in = require_key(rep, "inputs");
  const json& ms = require_key(in, "matrices");
  if (!ms.is_array() || ms.empty()) {
    v.check(false, "inputs.matrices must be a nonempty array");
    return;
  }
  std::vector<Matrix<F>> X;
  for (const auto& m : ms) X.push_back(matrix_from_json(fld, m));
  const auto pencil = pq_weight_pencil(fld, X);
  v.check(pencil_to_json(pencil).dump() == require_key(rep, "pencil").dump(),
          "weight pencil does not rebuild from the echoed tuple");
  const std::size_t p = X[0].rows(), q = X[0].cols();
  const std::uint64_t g = gcd_u64(p, q);
  const std::uint64_t lcm = p / g * q;
  v.check(require_u64(rep, "p") == p && require_u64(rep, "q") == q,
          "echoed shape disagrees with the matrices");
  const unsigned __int128 base = static_cast<unsigned __int128>(p) * q * lcm;
  v.check(static_cast<unsigned __int128>(
              require_u64(rep, "generator_degree_bound")) == base * base,
          "generator_degree_bound does not recompute");
  const auto verdict = require_str(rep, "verdict");
  if (verdict == "Semistable") {
    verify_full_rank_witness(v, fld, pencil, rep, "f_value");
  } else if (verdict != "UnstableWhp") {
    v.check(false, "unknown verdict \"" + verdict + "\"");
  }
}

void verify_bounds_impl(Verifier& v, const json& rep) {
  const json& in = require_key(rep, "inputs");
  const auto b = degree_bounds(require_u64(in, "n"), require_u64(in, "m"));
  v.check(require_u64(rep, "delta_lower") == b.delta_lower &&
              require_u64(rep, "delta_upper") == b.delta_upper &&
              require_u64(rep, "gamma_lower") == b.gamma_lower &&
              require_u64(rep, "gamma_upper") == b.gamma_upper &&
              require_u64(rep, "beta_upper_char0") == b.beta_upper_char0 &&
              require_u64(rep, "beta_cap_char0") == b.beta_cap_char0,
          "degree bounds do not recompute");
}

}  // namespace

VerifyOutcome verify_report(const json& report) {
  if (!report.is_object()) throw FormatError("report must be a JSON object");
  const auto cmd = require_str(report, "command");
  Verifier v;
  if (cmd == "bounds") {
    verify_bounds_impl(v, report);
  } else if (cmd == "selftest") {
    /* a selftest report is a transcript, not a certificate */
  } else if (cmd == "nullcone" || cmd == "ncrank" || cmd == "invertible" ||
             cmd == "rit" || cmd == "hard-instance" || cmd == "quiver check" ||
             cmd == "quiver pq") {
    const auto fs = field_from_json(require_key(report, "field"));
    with_field(fs, [&](auto fld) {
      if (cmd == "nullcone") verify_nullcone_impl(v, fld, report);
      else if (cmd == "ncrank") verify_ncrank_impl(v, fld, report);
      else if (cmd == "invertible") verify_invertible_impl(v, fld, report);
      else if (cmd == "rit") verify_rit_impl(v, fld, report);
      else if (cmd == "hard-instance") verify_hard_instance_impl(v, fld, report);
      else if (cmd == "quiver check") verify_quiver_check_impl(v, fld, report);
      else verify_quiver_pq_impl(v, fld, report);
      return 0;
    });
  } else {
    throw FormatError("unknown report command \"" + cmd + "\"");
  }
  v.out.ok = v.out.problems.empty();
  return v.out;
}

json verify_outcome_to_json(const std::string& target_command,
                            const VerifyOutcome& v) {
  json j;
  j["command"] = "verify";
  j["target_command"] = target_command;
  j["checked"] = v.checked;
  j["ok"] = v.ok;
  j["problems"] = v.problems;
  return j;
}

}  // namespace ncalg
