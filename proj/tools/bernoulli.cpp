// Command-line front end: every subcommand prints one deterministic JSON (or
// CSV) payload on stdout; diagnostics and cache notes go to stderr.
//
// Exit codes: 0 success / PASS / CERTIFIED, 1 usage or parameter-domain
// error, 2 computational FAIL / COUNTEREXAMPLE, 3 INCONCLUSIVE / UNRESOLVED /
// budget exhausted.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <iostream>
#include <map>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "bernoulli/cache.hpp"
#include "bernoulli/entropy.hpp"
#include "bernoulli/interval.hpp"
#include "bernoulli/numbers.hpp"
#include "bernoulli/phi.hpp"
#include "bernoulli/pipeline.hpp"
#include "bernoulli/polynomial.hpp"
#include "bernoulli/roots.hpp"
#include "bernoulli/smallvalue.hpp"
#include "bernoulli/transversality.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace bernoulli;

json j_interval(const Interval& x) { return json::array({x.lo_d(), x.hi_d()}); }

struct RunResult {
  std::string payload;
  int exit_code = 0;
};

std::pair<Rat, Rat> parse_pair(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("expected 'lo,hi', got '" + s + "'");
  Rat lo = parse_exact_decimal(s.substr(0, comma));
  Rat hi = parse_exact_decimal(s.substr(comma + 1));
  if (lo > hi) throw std::invalid_argument("interval lo > hi: " + s);
  return {lo, hi};
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(static_cast<double>(parse_exact_decimal(item)));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

AlgebraicNumber select_lambda(const std::string& poly, const std::string& root_in) {
  auto p = IntPolynomial::parse(poly);
  auto [lo, hi] = parse_pair(root_in);
  return AlgebraicNumber::select_root(p, lo, hi);
}

double display_scale(bool bits) { return bits ? 1.0 / std::log(2.0) : 1.0; }

// ---- subcommand handlers ----------------------------------------------------

RunResult run_mahler(const std::string& poly, long prec) {
  auto p = IntPolynomial::parse(poly);
  Interval m = mahler_measure(p, prec);
  json j;
  j["poly"] = p.str();
  j["degree"] = p.degree();
  j["mahler"] = j_interval(m);
  j["width"] = m.width_d();
  j["prec"] = prec;
  return {j.dump() + "\n", 0};
}

RunResult run_roots(const std::string& poly, const std::string& target_width, long prec) {
  auto p = IntPolynomial::parse(poly);
  Rat tw = parse_exact_decimal(target_width);
  if (!(tw > 0)) throw std::invalid_argument("--target-width must be positive");
  json j;
  j["poly"] = p.str();
  json reals = json::array();
  for (const auto& b : isolate_real_root_brackets(p, tw)) {
    Interval iv = Interval::of_rats(b.lo, b.hi, prec_for_bracket_width(tw));
    reals.push_back(j_interval(iv));
  }
  j["real_roots"] = std::move(reals);
  json disks = json::array();
  if (p.degree() >= 1) {
    for (const auto& d : complex_root_disks(p.squarefree_part(), prec)) {
      json dj;
      dj["re"] = d.re_d();
      dj["im"] = d.im_d();
      dj["radius"] = d.radius_d();
      dj["certified"] = d.certified;
      disks.push_back(std::move(dj));
    }
  }
  j["disks"] = std::move(disks);
  j["prec"] = prec;
  return {j.dump() + "\n", 0};
}

RunResult run_entropy(const std::string& poly, const std::string& root_in, long nmax,
                      const std::string& cls, long prec, bool csv, bool bits) {
  AlgebraicNumber lam = select_lambda(poly, root_in);
  IndexFilter filter = CoeffClass::parse(cls).kind == CoeffClass::QTrimmed
                           ? IndexFilter::Trimmed
                           : IndexFilter::All;
  EntropySeries series = entropy_series(lam, nmax, filter, 50'000'000, prec);
  double scale = display_scale(bits);
  if (csv) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "N,H_lo,H_hi,HN_lo,HN_hi\n";
    for (const auto& e : series.entries) {
      Interval hn = e.H.div(Interval::point_long(e.consumed, prec));
      os << e.consumed << "," << e.H.lo_d() * scale << "," << e.H.hi_d() * scale << ","
         << hn.lo_d() * scale << "," << hn.hi_d() * scale << "\n";
    }
    return {os.str(), series.truncated ? 3 : 0};
  }
  json j;
  j["lambda_poly"] = lam.defining().str();
  j["filter"] = filter_name(filter);
  j["units"] = bits ? "bits" : "nats";
  json entries = json::array();
  for (const auto& e : series.entries) {
    Interval hn = e.H.div(Interval::point_long(e.consumed, prec));
    json ej;
    ej["N"] = e.consumed;
    ej["ambient"] = e.ambient;
    ej["H"] = json::array({e.H.lo_d() * scale, e.H.hi_d() * scale});
    ej["H_over_N"] = json::array({hn.lo_d() * scale, hn.hi_d() * scale});
    ej["full_support"] = e.full_support;
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  j["truncated"] = series.truncated;
  if (filter == IndexFilter::All && !series.entries.empty()) {
    FeketeBound fek = garsia_upper_bound(series, prec);
    j["fekete_upper"] =
        json::array({fek.value.lo_d() * scale, fek.value.hi_d() * scale});
    j["fekete_argmin_n"] = fek.argmin_n;
  }
  if (series.entries.size() >= 4) {
    Estimate est = garsia_estimate(series);
    j["estimate"] = {{"value", est.value * scale},
                     {"spread", est.spread * scale},
                     {"certified", est.certified}};
  }
  return {j.dump() + "\n", series.truncated ? 3 : 0};
}

json dim_report_json(const DimensionReport& rep, long prec) {
  json j;
  j["lambda_poly"] = rep.defining.str();
  j["isolator"] = json::array({static_cast<double>(rep.isolator.lo),
                               static_cast<double>(rep.isolator.hi)});
  j["mahler"] = j_interval(rep.mahler);
  json hn = json::array();
  for (const auto& e : rep.series.entries) {
    Interval r = e.H.div(Interval::point_long(e.consumed, prec));
    hn.push_back(json{{"N", e.consumed},
                      {"H", json::array({e.H.lo_d(), e.H.hi_d()})},
                      {"H_over_N", json::array({r.lo_d(), r.hi_d()})}});
  }
  j["hn_series"] = std::move(hn);
  j["h_upper"] = j_interval(rep.h_upper);
  j["h_lower"] = j_interval(rep.h_lower);
  j["log_lambda_inv"] = j_interval(rep.loglam_inv);
  j["dim_upper"] = j_interval(rep.dim_upper);
  j["dim_estimate"] = rep.dim_estimate;
  j["verdict"] = verdict_name(rep.verdict);
  j["flags"] = rep.flags;
  return j;
}

RunResult run_dim(const std::string& poly, const std::string& root_in, long nmax, long prec) {
  AlgebraicNumber lam = select_lambda(poly, root_in);
  DimensionReport rep = dimension_report(lam, nmax, prec);
  int code = rep.verdict == DimVerdict::Unresolved ? 3 : 0;
  return {dim_report_json(rep, prec).dump() + "\n", code};
}

RunResult run_bvcheck(const std::string& poly, const std::string& root_in, long nmax,
                      long prec) {
  AlgebraicNumber lam = select_lambda(poly, root_in);
  BVCheckReport rep = bv_inequality_check(lam, nmax, prec);
  json j;
  j["lambda_poly"] = rep.defining.str();
  j["c"] = rep.c;
  j["lhs"] = j_interval(rep.lhs);
  j["rhs_upper"] = j_interval(rep.rhs_upper);
  j["fekete"] = j_interval(rep.fekete);
  j["h_lower"] = j_interval(rep.h_lower);
  j["h_upper"] = j_interval(rep.h_upper);
  j["upper_violation"] = rep.upper_violation;
  j["windows_ok"] = rep.windows_ok;
  j["lower_claim_consistent"] = rep.lower_claim_consistent;
  j["consistent"] = rep.consistent;
  return {j.dump() + "\n", rep.consistent ? 0 : 2};
}

RunResult run_phi(const std::string& a_list, bool csv) {
  auto as = parse_double_list(a_list);
  if (csv) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "a,lower,estimate\n";
    for (double a : as) {
      PhiEvaluation pe = phi(a);
      os << a << "," << pe.phi_lower.lo_d() << "," << pe.phi_estimate << "\n";
    }
    return {os.str(), 0};
  }
  json rows = json::array();
  for (double a : as) {
    PhiEvaluation pe = phi(a);
    rows.push_back(json{{"a", a},
                        {"lower", j_interval(pe.phi_lower)},
                        {"estimate", pe.phi_estimate},
                        {"t_star", pe.t_star},
                        {"widened", pe.widened}});
  }
  return {json{{"phi", rows}}.dump() + "\n", 0};
}

RunResult run_cofh(const std::string& h_list, bool csv) {
  auto hs = parse_double_list(h_list);
  bool all_certified = true;
  if (csv) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "h,c_lo,c_hi\n";
    for (double h : hs) {
      ThresholdResult tr = capital_c(h);
      all_certified = all_certified && tr.certified;
      os << h << "," << tr.c_of_h.lo_d() << "," << tr.c_of_h.hi_d() << "\n";
    }
    return {os.str(), all_certified ? 0 : 3};
  }
  json rows = json::array();
  for (double h : hs) {
    ThresholdResult tr = capital_c(h);
    all_certified = all_certified && tr.certified;
    rows.push_back(json{{"h", h},
                        {"c_of_h", j_interval(tr.c_of_h)},
                        {"certified", tr.certified},
                        {"phi_lower_at_c", j_interval(tr.phi_at_threshold.phi_lower)}});
  }
  return {json{{"c_of_h", rows}}.dump() + "\n", all_certified ? 0 : 3};
}

json outcome_json(const TransversalityOutcome& out) {
  json j;
  j["class"] = out.cls.name();
  j["x0"] = out.x0;
  j["delta"] = out.delta;
  j["status"] = tstatus_name(out.status);
  j["cells"] = {{"count", out.nodes},
                {"digest", request_digest(std::to_string(out.cell_digest))}};
  j["max_depth"] = out.max_depth;
  if (out.status == TStatus::Counterexample) {
    j["witness"] = {{"prefix", out.witness_prefix}, {"x", out.witness_x}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

RunResult run_transversal(const std::string& series_class, const std::string& x0_s,
                          const std::string& delta_s, std::uint64_t budget,
                          const std::string& x1_s, const std::string& prefix_s) {
  SeriesClass cls = SeriesClass::parse(series_class);
  double x0 = static_cast<double>(parse_exact_decimal(x0_s));
  json j;
  int code = 0;
  if (!delta_s.empty()) {
    double delta = static_cast<double>(parse_exact_decimal(delta_s));
    TransversalityOutcome out = certify(cls, x0, delta, budget);
    j = outcome_json(out);
    code = out.status == TStatus::Certified ? 0
           : out.status == TStatus::Counterexample ? 2
                                                   : 3;
    if (!x1_s.empty()) {
      std::vector<int> prefix;
      if (!prefix_s.empty())
        for (const auto& v : parse_double_list(prefix_s)) prefix.push_back(static_cast<int>(v));
      double x1 = static_cast<double>(parse_exact_decimal(x1_s));
      DecayReport dr = decay_check(prefix, cls, x1, x0, delta);
      j["decay"] = {{"precondition_ok", dr.precondition_ok},
                    {"message", dr.message},
                    {"grid_points", dr.grid_points},
                    {"certified_violations", dr.certified_violations},
                    {"unverified_points", dr.unverified_points}};
      if (!dr.all_passed() && code == 0) code = 2;
    }
  } else {
    DeltaSearchResult ds = delta_search(cls, x0, budget);
    j["class"] = cls.name();
    j["x0"] = x0;
    j["mode"] = "delta-search";
    j["found"] = ds.found;
    j["best_delta"] = ds.best_delta;
    json trace = json::array();
    for (const auto& [d, s] : ds.trace)
      trace.push_back(json{{"delta", d}, {"status", tstatus_name(s)}});
    j["trace"] = std::move(trace);
    if (ds.found) j["certificate"] = outcome_json(ds.best_outcome);
    code = ds.found ? 0 : 3;
  }
  return {j.dump() + "\n", code};
}

RunResult run_minval(const std::string& poly, const std::string& root_in, long n,
                     const std::string& cls_s, const std::string& mode_s, long prec,
                     std::uint64_t budget) {
  CoeffClass cls = CoeffClass::parse(cls_s);
  SearchMode mode;
  if (mode_s == "pruned")
    mode = SearchMode::Pruned;
  else if (mode_s == "exhaustive")
    mode = SearchMode::Exhaustive;
  else
    throw std::invalid_argument("--mode must be 'pruned' or 'exhaustive'");
  std::optional<AlgebraicNumber> xi;
  Interval lam = Interval();
  if (!poly.empty()) {
    xi = select_lambda(poly, root_in);
    lam = xi->enclosure(prec);
  } else {
    auto [lo, hi] = parse_pair(root_in);
    lam = Interval::of_rats(lo, hi, prec);
  }
  SearchResult sr = min_abs_value(lam, static_cast<int>(n), cls, mode, budget,
                                  xi ? &*xi : nullptr, prec);
  json j;
  j["lambda"] = j_interval(lam);
  j["n"] = n;
  j["class"] = cls.name();
  j["mode"] = mode_s;
  j["min"] = j_interval(sr.min_value);
  j["argmin"] = sr.argmin.str();
  j["nodes"] = sr.nodes;
  j["excluded_zero"] = sr.excluded_zero;
  j["zero_hits"] = sr.zero_hits;
  j["budget_hit"] = sr.budget_hit;
  return {j.dump() + "\n", sr.budget_hit ? 3 : 0};
}

RunResult run_garsia_check(const std::string& poly, const std::string& root_in, long nmax,
                           long prec) {
  AlgebraicNumber xi = select_lambda(poly, root_in);
  GarsiaBoundReport rep = verify_garsia_bound(xi, static_cast<int>(nmax), prec);
  json j;
  j["poly"] = rep.defining.str();
  j["degree"] = rep.degree;
  j["mahler"] = j_interval(rep.mahler);
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back(json{{"n", r.n},
                        {"min_nonzero", j_interval(r.min_nonzero)},
                        {"bound", j_interval(r.bound)},
                        {"zeros_excluded", r.zero_excluded},
                        {"violation", r.violation},
                        {"confirmed", r.confirmed}});
  j["rows"] = std::move(rows);
  j["any_violation"] = rep.any_violation;
  j["identity_checked"] = rep.identity_checked;
  j["identity_ok"] = rep.identity_ok;
  j["partial"] = rep.partial;
  int code = rep.any_violation ? 2 : rep.partial ? 3 : 0;
  return {j.dump() + "\n", code};
}

RunResult run_separation(const std::string& poly, const std::string& root_in, long n,
                         int samples, long prec, int jobs) {
  AlgebraicNumber xi = select_lambda(poly, root_in);
  SeparationReport rep = separation_check(xi, static_cast<int>(n), samples, prec, 0, jobs);
  json j;
  j["poly"] = rep.defining.str();
  j["degree"] = rep.degree;
  j["n"] = rep.n;
  j["mahler"] = j_interval(rep.mahler);
  j["class"] = rep.cls.name();
  j["r_inner"] = j_interval(rep.r_inner);
  j["r_outer"] = j_interval(rep.r_outer);
  j["threshold"] = j_interval(rep.threshold);
  json samples_j = json::array();
  for (const auto& s : rep.samples)
    samples_j.push_back(json{{"side", s.side},
                             {"radius", s.radius},
                             {"lambda", s.lambda_mid},
                             {"min", j_interval(s.min_value)},
                             {"verdict", verdict_name(s.verdict)}});
  j["samples"] = std::move(samples_j);
  j["verdict"] = verdict_name(rep.verdict);
  int code = rep.verdict == Verdict::Pass ? 0 : rep.verdict == Verdict::Fail ? 2 : 3;
  return {j.dump() + "\n", code};
}

RunResult run_atlas(long nmax, const std::string& region, long prec, bool csv, int jobs) {
  auto [lo, hi] = parse_pair(region);
  RootAtlas atlas = root_atlas(static_cast<int>(nmax), lo, hi, prec, jobs);
  if (csv) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "root_lo,root_hi,poly,degree\n";
    for (const auto& e : atlas.roots) {
      Interval iv = Interval::of_rats(e.root.lo, e.root.hi, prec + 64);
      os << iv.lo_d() << "," << iv.hi_d() << "," << e.source.str() << ","
         << e.source.degree() << "\n";
    }
    return {os.str(), 0};
  }
  json j;
  j["n_max"] = nmax;
  j["region"] = json::array({static_cast<double>(lo), static_cast<double>(hi)});
  j["polynomial_count"] = atlas.polynomial_count;
  json roots = json::array();
  for (const auto& e : atlas.roots) {
    Interval iv = Interval::of_rats(e.root.lo, e.root.hi, prec + 64);
    roots.push_back(json{{"root", j_interval(iv)},
                         {"poly", e.source.str()},
                         {"degree", e.source.degree()}});
  }
  j["roots"] = std::move(roots);
  j["root_count"] = atlas.roots.size();
  if (atlas.roots.size() >= 2) {
    j["min_gap"] = j_interval(atlas.min_gap);
    j["gap_pair"] = json::array({atlas.gap_left, atlas.gap_left + 1});
    j["empirical_C"] = atlas.empirical_c;
  }
  return {j.dump() + "\n", 0};
}

RunResult run_boxdim(const std::string& root_in, long n, long samples, int scale,
                     std::uint64_t seed) {
  auto [lo, hi] = parse_pair(root_in);
  Interval lam = Interval::of_rats(lo, hi, 64);
  Estimate est = empirical_box_entropy(lam, static_cast<int>(n), samples, scale, seed);
  json j;
  j["lambda"] = j_interval(lam);
  j["n"] = n;
  j["samples"] = samples;
  j["scale_exponent"] = scale;
  j["seed"] = seed;
  j["estimate"] = est.value;
  j["bootstrap_spread"] = est.spread;
  j["certified"] = est.certified;
  return {j.dump() + "\n", 0};
}

}  // namespace

namespace bernoulli_cli {

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"quantitative toolkit for Bernoulli-convolution dimension bounds"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // frees -h for the --h option

  // shared flag storage
  std::string poly, root_in = "0,1", cls = "full", mode = "pruned", series_class = "P";
  std::string x0_s, delta_s, x1_s, prefix_s, a_list, h_list, region = "0.5,1";
  std::string target_width = "0.000000000001";
  long prec = 128, nmax = 24, n = 0, samples_l = 8, boxdim_samples = 20000;
  int scale = 8, jobs = 1;
  std::uint64_t seed = 0, budget = 10'000'000, minval_budget = 0;
  bool csv = false, bits = false, no_cache = false;

  app.add_flag("--csv", csv, "emit CSV instead of JSON");
  app.add_flag("--bits", bits, "display entropies in bits (display only)");
  app.add_flag("--no-cache", no_cache, "bypass the result cache");
  app.add_option("--jobs", jobs, "worker parallelism for batch subcommands");
  app.add_option("--seed", seed, "RNG seed for randomized subcommands");

  auto* c_mahler = app.add_subcommand("mahler", "Mahler measure enclosure of a polynomial");
  c_mahler->add_option("--poly", poly, "coefficients, ascending degree")->required();
  c_mahler->add_option("--prec", prec, "working precision in bits");

  auto* c_roots = app.add_subcommand("roots", "real root isolation and certified complex disks");
  c_roots->add_option("--poly", poly)->required();
  c_roots->add_option("--prec", prec);
  c_roots->add_option("--target-width", target_width, "real-root interval width target");

  auto* c_entropy = app.add_subcommand("entropy", "entropy series H_N of the signed power sums");
  c_entropy->add_option("--poly", poly)->required();
  c_entropy->add_option("--root-in", root_in, "window isolating the root lambda");
  c_entropy->add_option("--nmax", nmax);
  c_entropy->add_option("--class", cls, "full (ALL indices) or q (TRIMMED)");
  c_entropy->add_option("--prec", prec);

  auto* c_dim = app.add_subcommand("dim", "dimension report for an algebraic parameter");
  c_dim->add_option("--poly", poly)->required();
  c_dim->add_option("--root-in", root_in);
  c_dim->add_option("--nmax", nmax);
  c_dim->add_option("--prec", prec);

  auto* c_bv = app.add_subcommand("bvcheck", "entropy vs Mahler inequality window check");
  c_bv->add_option("--poly", poly)->required();
  c_bv->add_option("--root-in", root_in);
  c_bv->add_option("--nmax", nmax);
  c_bv->add_option("--prec", prec);

  auto* c_phi = app.add_subcommand("phi", "certified lower bounds of the entropy-gap function");
  c_phi->add_option("--a", a_list, "comma-separated list of a >= 1")->required();

  auto* c_cofh = app.add_subcommand("cofh", "certified Mahler-measure thresholds C(h)");
  c_cofh->add_option("--h", h_list, "comma-separated list of h in (0, ln 2)")->required();

  auto* c_trans = app.add_subcommand("transversal", "delta-transversality certification");
  c_trans->add_option("--series-class", series_class, "P, P1 or P2");
  c_trans->add_option("--x0", x0_s)->required();
  c_trans->add_option("--delta", delta_s, "omit to run the delta bisection search");
  c_trans->add_option("--budget-nodes", budget);
  c_trans->add_option("--x1", x1_s, "run the decay check from x1 (needs --prefix)");
  c_trans->add_option("--prefix", prefix_s, "comma-separated coefficients a_1..a_k");

  auto* c_minval = app.add_subcommand("minval", "minimum |P(lambda)| over a coefficient class");
  c_minval->add_option("--poly", poly, "optional: lambda as a root of this polynomial");
  c_minval->add_option("--root-in", root_in, "root window, or the lambda interval itself");
  c_minval->add_option("--n", n, "degree bound")->required();
  c_minval->add_option("--class", cls);
  c_minval->add_option("--mode", mode, "pruned or exhaustive");
  c_minval->add_option("--prec", prec);
  c_minval->add_option("--budget-nodes", minval_budget, "0 = unlimited");

  auto* c_garsia = app.add_subcommand("garsia-check", "lower-bound verification for |P(xi)|");
  c_garsia->add_option("--poly", poly)->required();
  c_garsia->add_option("--root-in", root_in);
  c_garsia->add_option("--nmax", nmax);
  c_garsia->add_option("--prec", prec);

  auto* c_sep = app.add_subcommand("separation", "annulus separation check around xi");
  c_sep->add_option("--poly", poly)->required();
  c_sep->add_option("--root-in", root_in);
  c_sep->add_option("--n", n)->required();
  c_sep->add_option("--samples", samples_l, "samples per annulus side");
  c_sep->add_option("--prec", prec);

  auto* c_atlas = app.add_subcommand("atlas", "roots of all small-coefficient polynomials");
  c_atlas->add_option("--nmax", nmax)->required();
  c_atlas->add_option("--root-in", region, "region (lo, hi) inside (0, 1]");
  c_atlas->add_option("--prec", prec);

  auto* c_box = app.add_subcommand("boxdim", "Monte-Carlo box-entropy dimension estimate");
  c_box->add_option("--root-in", root_in, "numeric lambda interval")->required();
  c_box->add_option("--n", n, "truncation length")->required();
  c_box->add_option("--samples", boxdim_samples);
  c_box->add_option("--scale", scale, "resolution exponent: r = 2^-scale");

  for (auto* s : {c_mahler, c_roots, c_entropy, c_dim, c_bv, c_phi, c_cofh, c_trans,
                  c_minval, c_garsia, c_sep, c_atlas, c_box}) {
    s->fallthrough();
    s->set_help_flag("--help", "print help");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  // canonical parameter map for the cache key
  std::map<std::string, std::string> params;
  std::string sub;
  for (auto* s : {c_mahler, c_roots, c_entropy, c_dim, c_bv, c_phi, c_cofh, c_trans,
                  c_minval, c_garsia, c_sep, c_atlas, c_box})
    if (s->parsed()) sub = s->get_name();
  params["poly"] = poly;
  params["root_in"] = root_in;
  params["class"] = cls;
  params["mode"] = mode;
  params["series_class"] = series_class;
  params["x0"] = x0_s;
  params["delta"] = delta_s;
  params["x1"] = x1_s;
  params["prefix"] = prefix_s;
  params["a"] = a_list;
  params["h"] = h_list;
  params["region"] = region;
  params["target_width"] = target_width;
  params["prec"] = std::to_string(prec);
  params["nmax"] = std::to_string(nmax);
  params["n"] = std::to_string(n);
  params["samples"] = std::to_string(sub == "boxdim" ? boxdim_samples : samples_l);
  params["scale"] = std::to_string(scale);
  params["seed"] = std::to_string(seed);
  params["budget"] = std::to_string(sub == "minval" ? minval_budget : budget);
  params["csv"] = csv ? "1" : "0";
  params["bits"] = bits ? "1" : "0";

  ResultCache cache = no_cache ? ResultCache() : ResultCache::open_default();
  if (!no_cache && !cache.enabled() && !cache.warning().empty())
    err << "warning: " << cache.warning() << "\n";
  std::string canonical = canonical_request(sub, params);
  if (auto hit = cache.lookup(canonical)) {
    err << "cache: hit " << request_digest(canonical) << " (cached: true)\n";
    out << hit->payload;
    return hit->exit_code;
  }

  RunResult result;
  try {
    if (sub == "mahler") result = run_mahler(poly, prec);
    else if (sub == "roots") result = run_roots(poly, target_width, prec);
    else if (sub == "entropy") result = run_entropy(poly, root_in, nmax, cls, prec, csv, bits);
    else if (sub == "dim") result = run_dim(poly, root_in, nmax, prec);
    else if (sub == "bvcheck") result = run_bvcheck(poly, root_in, nmax, prec);
    else if (sub == "phi") result = run_phi(a_list, csv);
    else if (sub == "cofh") result = run_cofh(h_list, csv);
    else if (sub == "transversal")
      result = run_transversal(series_class, x0_s, delta_s, budget, x1_s, prefix_s);
    else if (sub == "minval")
      result = run_minval(poly, root_in, n, cls, mode, prec, minval_budget);
    else if (sub == "garsia-check") result = run_garsia_check(poly, root_in, nmax, prec);
    else if (sub == "separation")
      result = run_separation(poly, root_in, n, static_cast<int>(samples_l), prec, jobs);
    else if (sub == "atlas") result = run_atlas(nmax, region, prec, csv, jobs);
    else if (sub == "boxdim") result = run_boxdim(root_in, n, boxdim_samples, scale, seed);
    else {
      err << "error: unknown subcommand\n";
      return 1;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const PrecisionExhausted& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  cache.store(canonical, {result.payload, result.exit_code});
  out << result.payload;
  return result.exit_code;
}

}  // namespace bernoulli_cli

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) {
    std::cerr << "usage: bernoulli <subcommand> [flags]; see --help\n";
    return 1;
  }
  return bernoulli_cli::dispatch(args, std::cout, std::cerr);
}
