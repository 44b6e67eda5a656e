// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 10 drives the CLI binary passed as argv[1].

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bernoulli/entropy.hpp"
#include "bernoulli/phi.hpp"
#include "bernoulli/pipeline.hpp"
#include "bernoulli/roots.hpp"
#include "bernoulli/smallvalue.hpp"
#include "bernoulli/transversality.hpp"

using namespace bernoulli;

namespace {

int g_failures = 0;
std::string g_cli;

struct Criterion {
  int num;
  std::string label;
  double limit_seconds;
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

void run_criterion(int num, const std::string& label, double limit_seconds,
                   const std::function<void(Criterion&)>& body) {
  Criterion c{num, label, limit_seconds};
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.notes.push_back(std::string("exception: ") + e.what());
  }
  double secs =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
          .count() /
      1000.0;
  if (secs > limit_seconds) {
    c.pass = false;
    c.notes.push_back("runtime " + std::to_string(secs) + " s exceeds " +
                      std::to_string(limit_seconds) + " s");
  }
  std::printf("[%s] criterion %2d (%7.2f s / limit %.0f s): %s\n", c.pass ? "PASS" : "FAIL",
              num, secs, limit_seconds, label.c_str());
  for (const auto& n : c.notes) std::printf("       - %s\n", n.c_str());
  std::fflush(stdout);
  if (!c.pass) ++g_failures;
}

AlgebraicNumber root_of(const char* poly, const Rat& lo = Rat(0), const Rat& hi = Rat(1)) {
  return AlgebraicNumber::select_root(IntPolynomial::parse(poly), lo, hi);
}

ValueDistribution::Table enumerate_oracle(const AlgebraicNumber& lam, int n_steps,
                                          IndexFilter filter) {
  const IntPolynomial& mod = lam.defining();
  std::size_t d = static_cast<std::size_t>(mod.degree());
  std::vector<RationalVector> residues;
  RationalVector pw(d, Rat(0));
  pw[0] = 1;
  for (long n = 0; static_cast<int>(residues.size()) < n_steps; ++n) {
    if (n > 0) pw = residue_times_x(pw, mod);
    if (filter_accepts(filter, n)) residues.push_back(pw);
  }
  ValueDistribution::Table table;
  for (std::uint64_t bits = 0; bits < (1ull << n_steps); ++bits) {
    RationalVector v(d, Rat(0));
    for (int i = 0; i < n_steps; ++i)
      for (std::size_t k = 0; k < d; ++k)
        v[k] += (bits >> i) & 1 ? residues[static_cast<std::size_t>(i)][k]
                                : -residues[static_cast<std::size_t>(i)][k];
    table[v] += 1;
  }
  return table;
}

struct CliRun {
  int exit_code;
  std::string out;
};

CliRun run_cli(const std::string& args, const std::string& cache_dir) {
  namespace fs = std::filesystem;
  std::string out_file = cache_dir + "/acc_out.txt";
  std::string cmd = "BERNOULLI_CACHE=" + cache_dir + " " + g_cli + " " + args + " > " +
                    out_file + " 2> " + cache_dir + "/acc_err.txt";
  int status = std::system(cmd.c_str());
  std::ifstream f(out_file);
  std::stringstream ss;
  ss << f.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

double x0_two_pow_23() { return std::nextafter(std::pow(2.0, -2.0 / 3.0), 1.0); }

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli = argv[1];

  run_criterion(1, "Mahler enclosures: 2x-1, x^2+x-1, x^3-x-1 at width <= 1e-10", 1.0,
                [](Criterion& c) {
    struct Case {
      const char* poly;
      double value;
    } cases[] = {{"-1,2", 2.0},
                 {"-1,1,1", 1.6180339887498949},
                 {"-1,-1,0,1", 1.3247179572447460}};
    for (const auto& cs : cases) {
      Interval m = mahler_measure(IntPolynomial::parse(cs.poly), 128);
      c.require(m.width_d() <= 1e-10, std::string(cs.poly) + ": width too large");
      c.require(m.lo().to_double() <= cs.value && m.hi().to_double() >= cs.value - 1e-12,
                std::string(cs.poly) + ": enclosure misses the known value");
    }
  });

  run_criterion(2, "entropy DP equals the exhaustive oracle (N <= 16, 4 lambdas, 2 filters)",
                120.0, [](Criterion& c) {
    const char* polys[] = {"-1,2", "-1,1,1", "-1,0,1,1", "-3,5"};
    for (const char* poly : polys) {
      AlgebraicNumber lam = root_of(poly);
      for (IndexFilter f : {IndexFilter::All, IndexFilter::Trimmed}) {
        const int N = 16;
        ValueDistribution dist = ValueDistribution::initial(lam.defining());
        RationalVector pw(static_cast<std::size_t>(lam.degree()), Rat(0));
        pw[0] = 1;
        int consumed = 0;
        for (long n = 0; consumed < N; ++n) {
          if (n > 0) pw = residue_times_x(pw, lam.defining());
          if (!filter_accepts(f, n)) continue;
          dist = shift_distribution(dist, pw, n);
          ++consumed;
        }
        auto oracle = enumerate_oracle(lam, N, f);
        bool same = dist.table.size() == oracle.size();
        if (same)
          for (const auto& [k, cnt] : oracle) {
            auto it = dist.table.find(k);
            if (it == dist.table.end() || it->second != cnt) {
              same = false;
              break;
            }
          }
        c.require(same, std::string(poly) + "/" + filter_name(f) +
                            ": DP distribution differs from enumeration");
      }
    }
    // golden H_3 = (3/4) ln 8 + (1/4) ln 4, enclosure width <= 1e-12
    EntropySeries g = entropy_series(root_of("-1,1,1"), 3);
    Interval expect = Interval::ln2(192).mul(Interval::of_rat(Rat(11, 4), 192));
    const Interval& h3 = g.entries[2].H;
    c.require(h3.width_d() <= 1e-12, "golden H_3 enclosure wider than 1e-12");
    c.require(!(h3.hi() < expect.lo()) && !(expect.hi() < h3.lo()),
              "golden H_3 enclosure misses (3/4)ln8 + (1/4)ln4");
  });

  run_criterion(3, "Garsia bound: no violations over the degree<=6 atlas (n <= 10); "
                   "dyadic equality case exact (n <= 12)",
                300.0, [](Criterion& c) {
    RootAtlas atlas = root_atlas(6, Rat(1, 2), Rat(1), 128, 4);
    c.require(!atlas.roots.empty(), "atlas is empty");
    std::uint64_t violations = 0;
    std::vector<GarsiaBoundReport> reports(atlas.roots.size());
    parallel_for_index(atlas.roots.size(), 4, [&](std::size_t i) {
      AlgebraicNumber xi(atlas.roots[i].source, atlas.roots[i].root);
      reports[i] = verify_garsia_bound(xi, 10, 160, 0, false);
    });
    for (const auto& rep : reports)
      if (rep.any_violation) ++violations;
    c.require(violations == 0,
              "bound violations across the atlas: " + std::to_string(violations));

    AlgebraicNumber half = root_of("-1,2");
    GarsiaBoundReport dyadic = verify_garsia_bound(half, 12, 160);
    for (const auto& row : dyadic.rows) {
      Rat expect = Rat(1) / Rat(pow_int(2, static_cast<unsigned long>(row.n)));
      c.require(row.min_nonzero.lo().to_rat() == expect &&
                    row.min_nonzero.hi().to_rat() == expect,
                "lambda = 1/2, n = " + std::to_string(row.n) + ": min != 2^-n exactly");
    }
    c.require(!dyadic.any_violation, "equality case flagged as violation");
  });

  run_criterion(4, "Phi suite: Phi(1) = 0, monotone grid, <= ln 2, Phi(1e6) >= 0.68, "
                   "certified C(h)",
                120.0, [](Criterion& c) {
    PhiEvaluation p1 = phi(1.0);
    c.require(std::abs(p1.phi_lower.lo_d()) <= 1e-9 && std::abs(p1.phi_estimate) <= 1e-9,
              "|Phi(1)| > 1e-9");
    double prev = -1;
    for (double a : {1.0, 1.5, 2.0, 4.0, 10.0, 100.0}) {
      PhiEvaluation p = phi(a);
      c.require(p.phi_lower.lo_d() >= prev, "Phi lower bounds not nondecreasing at a = " +
                                                std::to_string(a));
      c.require(p.phi_estimate <= std::log(2.0) + 1e-6,
                "Phi estimate above ln 2 + 1e-6 at a = " + std::to_string(a));
      prev = p.phi_lower.lo_d();
    }
    c.require(phi(1e6).phi_lower.lo_d() >= 0.68, "Phi(1e6) < 0.68");
    for (double h : {0.1, 0.2, std::log(4.0 / 3.0)}) {
      ThresholdResult tr = capital_c(h);
      c.require(tr.certified, "C(h) not certified at h = " + std::to_string(h));
      PhiEvaluation re = phi(tr.c_of_h.hi_d());
      c.require(re.phi_lower.lo_d() >= h,
                "Phi(C(h)) < h on re-verification at h = " + std::to_string(h));
    }
  });

  run_criterion(5, "transversality: envelope at depth 0; delta >= 2^-10 at 2^(-2/3); "
                   "verified counterexample at 0.71; soundness samples",
                600.0, [](Criterion& c) {
    TransversalityOutcome env = certify({SeriesClass::Full}, 0.45, 0.1);
    c.require(env.status == TStatus::Certified && env.max_depth == 0,
              "(P, 0.45, 0.1) not certified at depth 0");
    c.require(soundness_sample({SeriesClass::Full}, 0.45, 0.1, 10000, 1),
              "soundness sampling failed on (P, 0.45, 0.1)");

    DeltaSearchResult ds = delta_search({SeriesClass::Full}, x0_two_pow_23(), 10'000'000);
    c.require(ds.found && ds.best_delta >= 1.0 / 1024,
              "delta bisection at 2^(-2/3) found no certified delta >= 2^-10");
    if (ds.found) {
      c.require(ds.best_outcome.status == TStatus::Certified, "best outcome not certified");
      c.require(soundness_sample({SeriesClass::Full}, x0_two_pow_23(), ds.best_delta, 10000, 2),
                "soundness sampling failed on the certified delta");
    }

    TransversalityOutcome ce = certify({SeriesClass::Full}, 0.71, 0.01);
    c.require(ce.status == TStatus::Counterexample, "(P, 0.71, 0.01): no counterexample");
    if (ce.status == TStatus::Counterexample)
      c.require(verify_witness(ce.cls, ce.witness_prefix, ce.witness_x, ce.delta, 512),
                "witness failed doubled-precision re-verification");
  });

  run_criterion(6, "pruned equals exhaustive (n = 12, 5 lambdas, both classes); "
                   "pruned node counts strictly smaller for n >= 8",
                600.0, [](Criterion& c) {
    AlgebraicNumber g = root_of("-1,1,1");
    std::vector<std::pair<std::string, Interval>> lambdas{
        {"0.52", Interval::of_rat(Rat(52, 100), 128)},
        {"0.6", Interval::of_rat(Rat(6, 10), 128)},
        {"golden", g.enclosure(128)},
        {"0.66", Interval::of_rat(Rat(66, 100), 128)},
        {"0.7", Interval::of_rat(Rat(7, 10), 128)}};
    for (const auto& [name, lam] : lambdas) {
      for (CoeffClass cls : {CoeffClass{CoeffClass::Full}, CoeffClass{CoeffClass::QTrimmed}}) {
        for (int n : {8, 12}) {
          SearchResult p = min_abs_value(lam, n, cls, SearchMode::Pruned);
          SearchResult x = min_abs_value(lam, n, cls, SearchMode::Exhaustive);
          c.require(p.argmin == x.argmin && !(p.min_value.lo() < x.min_value.lo()) &&
                        !(x.min_value.lo() < p.min_value.lo()),
                    name + "/" + cls.name() + "/n=" + std::to_string(n) + ": modes disagree");
          c.require(p.nodes < x.nodes,
                    name + "/" + cls.name() + "/n=" + std::to_string(n) +
                        ": pruned node count not smaller");
        }
      }
    }
  });

  run_criterion(7, "separation: golden n=14 PASS on 8 samples/side; 2/3 n=10 trimmed "
                   "report; n=13 guard rejects",
                600.0, [](Criterion& c) {
    SeparationReport g = separation_check(root_of("-1,1,1"), 14, 8, 256, 0, 4);
    c.require(g.cls.kind == CoeffClass::Full, "golden should use the FULL class");
    c.require(g.samples.size() == 16, "expected 8 samples per side");
    c.require(g.verdict == Verdict::Pass, "golden n=14 verdict is not PASS");

    SeparationReport q = separation_check(root_of("-2,3"), 10, 8, 256, 0, 4);
    c.require(q.cls.kind == CoeffClass::QTrimmed, "2/3 should use the trimmed class");
    c.require(q.verdict == Verdict::Pass || q.verdict == Verdict::Fail ||
                  q.verdict == Verdict::Inconclusive,
              "2/3 report has no verdict");

    bool rejected = false;
    try {
      separation_check(root_of("-1,1,1"), 13, 8);
    } catch (const std::invalid_argument&) {
      rejected = true;
    }
    c.require(rejected, "n = 13 was not rejected for the golden case");
  });

  run_criterion(8, "dimension pipeline: 1/2 exact, 9/10 decision logic, golden at N=28",
                600.0, [](Criterion& c) {
    DimensionReport half = dimension_report(root_of("-1,2"), 12);
    c.require(half.h_upper.hi().to_double() >= std::log(2.0) - 1e-12 &&
                  half.h_lower.lo_d() <= std::log(2.0),
              "lambda=1/2: h window misses ln 2");
    c.require(half.dim_upper.lo() == BigFloat::of_long(1) &&
                  half.dim_upper.hi() == BigFloat::of_long(1),
              "lambda=1/2: dim_upper != [1,1]");

    DimensionReport nine = dimension_report(root_of("-9,10"), 8);
    bool clears = nine.h_lower.lo_d() >= nine.loglam_inv.hi_d();
    c.require((nine.verdict == DimVerdict::DimOneCertified) == clears,
              "lambda=9/10: verdict disagrees with the phi comparison");
    c.require(nine.verdict == DimVerdict::DimOneCertified,
              "lambda=9/10: expected DIM_ONE_CERTIFIED");
    // decision logic on injected mock windows
    Interval loglam = nine.loglam_inv;
    Interval below(BigFloat::of_double(0.0), BigFloat::of_double(loglam.lo_d() * 0.5), 64);
    Interval above(BigFloat::of_double(loglam.hi_d() + 0.01),
                   BigFloat::of_double(loglam.hi_d() + 0.02), 64);
    c.require(verdict_from_windows(above, Interval::ln2(64), loglam) ==
                  DimVerdict::DimOneCertified,
              "mock window: dim-one case wrong");
    c.require(verdict_from_windows(below, below, loglam) == DimVerdict::DimLtOneCertified,
              "mock window: dim-lt-one case wrong");
    c.require(verdict_from_windows(below, Interval::ln2(64), loglam) ==
                  DimVerdict::Unresolved,
              "mock window: unresolved case wrong");

    DimensionReport gold = dimension_report(root_of("-1,1,1"), 28);
    c.require(gold.dim_estimate >= 0.98 && gold.dim_estimate < 1.0,
              "golden dim_estimate outside [0.98, 1.0): " + std::to_string(gold.dim_estimate));
    // H_N / N / ln(phi) strictly decreasing once collisions begin (N >= 2)
    double prev = 1e300;
    bool strict = true;
    for (const auto& e : gold.series.entries) {
      if (e.consumed < 2) continue;
      double ratio = e.H.mid_d() / static_cast<double>(e.consumed);
      if (!(ratio < prev)) strict = false;
      prev = ratio;
    }
    c.require(strict, "golden H_N/N not strictly decreasing for N in [2, 28]");
    c.require(gold.series.entries.size() == 28, "golden series truncated before N = 28");
  });

  run_criterion(9, "root atlas degree <= 6: count bound, golden present, two-precision "
                   "gap stability",
                300.0, [](Criterion& c) {
    RootAtlas a = root_atlas(6, Rat(1, 2), Rat(1), 128, 4);
    c.require(a.polynomial_count <= 6L * 2187L, "polynomial count exceeds n 3^(n+1)");
    bool golden_found = false;
    for (const auto& e : a.roots)
      if (e.root.lo <= Rat(6180340, 10000000) && Rat(6180339, 10000000) <= e.root.hi)
        golden_found = true;
    c.require(golden_found, "golden root missing from the atlas");
    RootAtlas b = root_atlas(6, Rat(1, 2), Rat(1), 256, 4);
    c.require(a.roots.size() == b.roots.size(), "root counts differ across precisions");
    c.require(!a.min_gap.disjoint(b.min_gap),
              "min-gap enclosures at 128 and 256 bits do not overlap");
  });

  run_criterion(10, "CLI determinism: byte-identical reruns and exact cache replay", 600.0,
                [](Criterion& c) {
    if (g_cli.empty()) {
      c.require(false, "no CLI binary path supplied");
      return;
    }
    namespace fs = std::filesystem;
    std::string cache = (fs::temp_directory_path() / "bernoulli-acceptance-cache").string();
    fs::remove_all(cache);
    fs::create_directories(cache);
    std::vector<std::string> invocations = {
        "mahler --poly \"-1,1,1\"",
        "roots --poly \"-1,-1,0,1\"",
        "entropy --poly \"-1,1,1\" --nmax 8 --seed 3",
        "dim --poly \"-1,2\" --nmax 8",
        "bvcheck --poly \"-1,2\" --nmax 8",
        "phi --a 1,2,4",
        "cofh --h 0.1",
        "transversal --series-class P --x0 0.45 --delta 0.1",
        "minval --root-in 0.5,0.5 --n 8 --mode pruned",
        "garsia-check --poly \"-1,2\" --nmax 6",
        "separation --poly \"-1,1,1\" --root-in 0.6,0.7 --n 14 --samples 2",
        "atlas --nmax 3",
        "boxdim --root-in 0.5,0.5 --n 20 --scale 8 --seed 11",
    };
    for (const auto& inv : invocations) {
      CliRun first = run_cli(inv, cache);
      CliRun second = run_cli(inv, cache);  // cache hit
      c.require(first.exit_code == second.exit_code,
                inv + ": exit codes differ across reruns");
      c.require(first.out == second.out, inv + ": stdout bytes differ across reruns");
      c.require(!first.out.empty(), inv + ": empty payload");
    }
  });

  std::printf("%d/10 criteria passed\n", 10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
