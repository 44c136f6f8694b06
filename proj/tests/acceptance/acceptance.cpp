// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "exponent_lab/cfrac.hpp"
#include "exponent_lab/cli/golden.hpp"
#include "exponent_lab/constants.hpp"
#include "exponent_lab/diophantine.hpp"
#include "exponent_lab/errors.hpp"
#include "exponent_lab/kernels.hpp"
#include "exponent_lab/lemma.hpp"
#include "oracle.hpp"

using namespace exponent_lab;
using namespace exponent_lab::cli;

namespace {

constexpr std::size_t kRows = 30;
constexpr double kTableSeconds = 10.0;

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::vector<std::string> join_notes(const GoldenReport& r) { return r.describe(); }

Outcome golden_mu(const ConstantId& id, Rounding mode, double* elapsed) {
  const auto start = Clock::now();
  const auto records = mu_table(id, kRows);
  *elapsed = seconds_since(start);
  const GoldenReport r = compare_mu_table(*golden_mu_for(id), records, mode, kRows);
  Outcome o;
  o.pass = r.passed() && *elapsed < kTableSeconds;
  o.detail = r.table + ": " + std::to_string(r.rows_compared) + "/" + std::to_string(r.rows_expected) +
             " rows, p/q mismatches " + std::to_string(r.exact_mismatches.size()) + ", 1-ulp rows " +
             std::to_string(r.one_ulp.size()) + " (max " + std::to_string(GoldenReport::kAllowedUlpRows) +
             "), beyond tolerance " + std::to_string(r.beyond_tolerance.size()) + ", " + fmt(*elapsed, 2) + " s";
  o.notes = join_notes(r);
  return o;
}

Outcome criterion_1() {
  double elapsed = 0;
  Outcome o = golden_mu(PiPow{2}, Rounding::HalfEven, &elapsed);
  double ceil_elapsed = 0;
  const Outcome ceil = golden_mu(PiPow{2}, Rounding::Ceiling, &ceil_elapsed);
  o.notes.push_back(std::string("diagnostic: rounding toward +infinity instead ") +
                    (ceil.pass ? "reproduces every cell" : "still mismatches") + " (" + ceil.detail + ")");
  o.notes.push_back("diagnostic: the published cells are consistent with upward rounding; "
                    "half-even is the required rule, so this criterion is reported as failing");
  return o;
}

Outcome criterion_2() {
  double t3 = 0;
  double tz = 0;
  const Outcome pi3 = golden_mu(PiPow{3}, Rounding::HalfEven, &t3);
  const Outcome z3 = golden_mu(Zeta3{}, Rounding::HalfEven, &tz);

  // Leading digits of zeta(3), truncated rather than rounded.
  const std::string published(golden_zeta3_digits());
  const BigReal zeta = gen_constant(Zeta3{}, 256);
  std::string computed = zeta.to_fixed(static_cast<int>(published.size()) + 10);
  computed.resize(published.size());
  const bool prefix_ok = computed.rfind("1.2020569", 0) == 0 && computed == published;

  Outcome o;
  o.pass = pi3.pass && z3.pass && prefix_ok;
  o.detail = pi3.detail + "; " + z3.detail + "; zeta3 digits " + computed + (prefix_ok ? " match" : " differ");
  o.notes = pi3.notes;
  o.notes.insert(o.notes.end(), z3.notes.begin(), z3.notes.end());
  return o;
}

Outcome criterion_3() {
  Outcome o;
  o.pass = true;
  for (const ConstantId& id : std::vector<ConstantId>{PiPow{2}, PiPow{3}}) {
    const GoldenCf golden = *golden_cf_for(id);
    const ContinuedFraction cf = expand(id, golden.terms.size());
    const std::vector<mpz_class> terms(cf.terms().begin(), cf.terms().begin() + golden.terms.size());
    const GoldenReport r = compare_cf(golden, terms, golden.terms.size());
    o.pass = o.pass && r.passed();
    o.detail += (o.detail.empty() ? "" : "; ") + r.table + " " + std::to_string(r.rows_compared) + "/" +
                std::to_string(r.rows_expected) + " terms" + (r.passed() ? " equal" : " differ");
    if (!r.passed()) {
      const auto lines = r.describe();
      o.notes.insert(o.notes.end(), lines.begin(), lines.end());
    }
  }
  return o;
}

const std::vector<ConstantId>& table_constants() {
  static const std::vector<ConstantId> ids{PiPow{2}, PiPow{3}, Zeta3{}};
  return ids;
}

Outcome criterion_4() {
  Outcome o;
  o.pass = true;
  for (const ConstantId& id : table_constants()) {
    const ContinuedFraction cf = expand(id, kRows + 1);
    const auto cs = convergents(cf, kRows);
    const bool det = check_determinant(cs);
    const bool alt = check_alternating_sum(cs, cf);
    o.pass = o.pass && det && alt;
    o.detail += (o.detail.empty() ? "" : "; ") + to_string(id) + " determinant " + (det ? "ok" : "FAILED") +
                ", alternating sum " + (alt ? "ok" : "FAILED");
  }
  o.detail += " (" + std::to_string(kRows) + " convergents each)";
  return o;
}

Outcome criterion_5() {
  Outcome o;
  o.pass = true;
  for (const ConstantId& id : table_constants()) {
    const auto rows = convergent_bounds(id, kRows);
    std::size_t held = 0;
    for (const auto& r : rows) {
      held += r.asserted_hold() ? 1 : 0;
      if (!r.quotient_lower) {
        o.notes.push_back(to_string(id) + " row " + std::to_string(r.n + 1) +
                          ": 1/(2 a_{n+1} q_n^2) <= gap is false (a_{n+1} = 1); reported, not asserted");
      }
    }
    o.pass = o.pass && held == rows.size();
    o.detail += (o.detail.empty() ? "" : "; ") + to_string(id) + " " + std::to_string(held) + "/" +
                std::to_string(rows.size());
  }
  o.detail += " rows satisfy 0 < gap < 1/(a_{n+1} q_n^2) <= 1/q_n^2 and 1/(2 q_n q_{n+1}) <= gap";
  return o;
}

Outcome criterion_6() {
  Outcome o;
  o.pass = true;
  for (const ConstantId& id : table_constants()) {
    const auto cs = convergents(expand(id, 8), 6);
    const std::uint64_t q6 = cs[5].q.get_ui();
    std::vector<BestApproxRecord> records;
    for (unsigned bits = 128;; bits *= 2) {
      try {
        records = best_approx_bruteforce(gen_constant(id, bits), q6);
        break;
      } catch (const PrecisionError&) {
        if (bits > 4096) throw;
      }
    }
    std::set<mpz_class> expected;
    for (const auto& c : cs) expected.insert(c.q);
    std::set<mpz_class> got;
    bool numerators = true;
    for (const auto& r : records) {
      got.insert(mpz_class(static_cast<unsigned long>(r.q)));
      const auto it = std::find_if(cs.begin(), cs.end(), [&](const Convergent& c) { return c.q == r.q && c.p == r.p; });
      numerators = numerators && it != cs.end();
    }
    const bool ok = got == expected && numerators;
    o.pass = o.pass && ok;
    o.detail += (o.detail.empty() ? "" : "; ") + to_string(id) + " q <= " + std::to_string(q6) + ": " +
                std::to_string(records.size()) + " records" + (ok ? " at convergents" : " MISMATCH");
  }
  return o;
}

struct LemmaRuns {
  std::vector<std::vector<LemmaReport>> by_k;  // k = 1, 2, 3
};

const LemmaRuns& lemma_runs() {
  static const LemmaRuns runs = [] {
    LemmaRuns r;
    for (unsigned k = 1; k <= 3; ++k) r.by_k.push_back(verify_lemma_rows(k, kRows));
    return r;
  }();
  return runs;
}

Outcome criterion_7() {
  std::size_t rows = 0;
  std::size_t failures = 0;
  for (const auto& reports : lemma_runs().by_k) {
    for (const auto& r : reports) {
      ++rows;
      // Re-derive w from q alone and check it against the report.
      const WValue w = w_n(r.q);
      if (!w.odd || !r.w_odd || w.w != r.w || !mpz_odd_p(r.w.get_mpz_t())) ++failures;
    }
  }
  Outcome o;
  o.pass = failures == 0 && rows == 3 * kRows;
  o.detail = std::to_string(rows) + " rows (k = 1..3, n <= 30), " + std::to_string(failures) + " even w";
  return o;
}

Outcome criterion_8() {
  std::size_t s_minus_ok = 0;
  std::size_t asserted = 0;
  std::size_t bound_ok = 0;
  std::size_t rows = 0;
  std::size_t identity_ok = 0;
  Outcome o;
  for (const auto& reports : lemma_runs().by_k) {
    for (const auto& r : reports) {
      ++rows;
      s_minus_ok += (r.s_minus_exact && r.s_minus_agrees) ? 1 : 0;
      identity_ok += r.cos_identity ? 1 : 0;
      if (r.q >= 3) {
        ++asserted;
        bound_ok += r.bound_holds ? 1 : 0;
      } else {
        o.notes.push_back("k=" + std::to_string(r.k) + " row " + std::to_string(r.n) + ": q = " + r.q.get_str() +
                          " < 3, bound evaluated (residual " + r.bound_residual.to_fixed(6) + ") but not asserted");
      }
    }
  }
  o.pass = s_minus_ok == rows && identity_ok == rows && bound_ok == asserted;
  o.detail = "s_minus = 1 on " + std::to_string(s_minus_ok) + "/" + std::to_string(rows) +
             " rows; s_plus >= 1 - 2 pi^2/q^2 on " + std::to_string(bound_ok) + "/" + std::to_string(asserted) +
             " rows with q >= 3; s_plus = |cos(2 pi^(k+1) q)| on " + std::to_string(identity_ok) + "/" +
             std::to_string(rows);
  return o;
}

Outcome criterion_9() {
  constexpr int kSamples = 200;
  constexpr unsigned kBits = 160;
  std::mt19937_64 rng(20240607);
  std::uniform_int_distribution<unsigned long> xs(0, 500);
  std::uniform_real_distribution<double> zs(0.02, 3.12);
  Outcome o;
  o.pass = true;
  double half_ratio_min = 1e300;
  double half_ratio_max = 0;
  for (KernelType type : {KernelType::Dirichlet, KernelType::Fejer}) {
    int agree = 0;
    int rejected = 0;
    double worst = 0;
    for (int i = 0; i < kSamples; ++i) {
      const unsigned long x = xs(rng);
      const BigReal z = BigReal::from_double(zs(rng)).with_precision(kBits);
      try {
        const KernelSample s = sample_kernel(type, x, z, kBits, type == KernelType::Fejer);
        if (s.agrees(10.0)) ++agree;
        worst = std::max(worst, mpfr_get_d(s.deviation().get(), MPFR_RNDU));
        if (s.closed_half) {
          const double ratio = s.summed->to_double() / s.closed_half->to_double();
          half_ratio_min = std::min(half_ratio_min, ratio);
          half_ratio_max = std::max(half_ratio_max, ratio);
        }
      } catch (const NearSingularity&) {
        ++rejected;
      }
    }
    o.pass = o.pass && agree == kSamples;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %d/%d within 10*err (max |closed - summed| %.2e, %d rejected)",
                  std::string(to_string(type)).c_str(), agree, kSamples, worst, rejected);
    o.detail += (o.detail.empty() ? "" : "; ") + std::string(buf);
  }
  o.notes.push_back("fejer: the double sum equals sin^2((x+1)z)/sin^2(z) with no leading 1/2; against the "
                    "1/2-scaled closed form the sum is larger by a factor in [" +
                    fmt(half_ratio_min, 12) + ", " + fmt(half_ratio_max, 12) + "]");
  return o;
}

Outcome criterion_10() {
  std::size_t asserted = 0;
  std::size_t held = 0;
  for (const auto& reports : lemma_runs().by_k) {
    for (const auto& r : reports) {
      if (r.n < 2) continue;
      ++asserted;
      held += (r.sandwich_asserted && r.sandwich_holds) ? 1 : 0;
    }
  }
  Outcome o;
  o.pass = held == asserted && asserted == 3 * (kRows - 1);
  o.detail = "q_{n+1}/pi <= 1/|sin(pi^(k+1) q_n)| <= q_{n+1} on " + std::to_string(held) + "/" +
             std::to_string(asserted) + " rows (k = 1..3, 2 <= n <= 30)";
  o.notes.push_back("the exponent of pi^k itself is not asserted; only the sandwich is checked");
  return o;
}

Outcome criterion_11() {
  const auto a = sine_argmax_bruteforce(2, 1100);
  const auto b = sine_argmax_bruteforce(3, 200);
  const unsigned long oa = oracle::sine_argmin_bruteforce(2, 1100, 60);
  const unsigned long ob = oracle::sine_argmin_bruteforce(3, 200, 60);
  Outcome o;
  o.pass = a.z == 1089 && b.z == 159 && oa == 1089 && ob == 159;
  o.detail = "k=2, z <= 1100: " + std::to_string(a.z) + " (oracle " + std::to_string(oa) +
             "); k=3, z <= 200: " + std::to_string(b.z) + " (oracle " + std::to_string(ob) + ")";
  return o;
}

Outcome criterion_12() {
  const auto rows = mu_table(Champernowne{10}, 20);
  std::size_t above = 0;
  std::string best;
  std::size_t best_row = 0;
  BigReal best_mu;
  for (const auto& r : rows) {
    if (!r.mu) continue;
    if (certainly_greater(*r.mu, BigReal::exact(4L))) ++above;
    if (best.empty() || certainly_greater(*r.mu, best_mu)) {
      best_mu = *r.mu;
      best_row = r.n;
      best = format_mu(r, Rounding::HalfEven);
    }
  }
  Outcome o;
  o.pass = rows.size() == 20 && above > 0;
  o.detail = std::to_string(rows.size()) + " rows, " + std::to_string(above) + " with mu > 4, largest " + best +
             " at row " + std::to_string(best_row);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"pi^2 exponent table (half-even, <= 2 one-ulp rows, < 10 s)", criterion_1},
      {"pi^3 and zeta(3) exponent tables, zeta(3) digits", criterion_2},
      {"continued fraction prefixes of pi^2 (27) and pi^3 (21)", criterion_3},
      {"determinant and alternating-sum identities", criterion_4},
      {"convergent bound suite", criterion_5},
      {"best approximations occur at convergents (q <= q_6)", criterion_6},
      {"w_n is odd for k = 1..3, n <= 30", criterion_7},
      {"s_minus = 1 and the s_plus lower bound", criterion_8},
      {"kernel closed forms against direct sums (200 samples each)", criterion_9},
      {"reciprocal-sine sandwich", criterion_10},
      {"sine argmax brute force", criterion_11},
      {"Champernowne exponent exceeds 4", criterion_12},
  };

  int failed = 0;
  const auto start = Clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first << " -- "
              << o.detail << '\n';
    for (const std::string& note : o.notes) std::cout << "      " << note << '\n';
    std::cout.flush();
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed in "
            << fmt(seconds_since(start), 1) << " s\n";
  return failed == 0 ? 0 : 1;
}
