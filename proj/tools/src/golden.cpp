#include "exponent_lab/cli/golden.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <variant>

namespace exponent_lab::cli {

namespace {

constexpr GoldenMuRow kMuPi2[] = {
    {1, "9", "1", ""},
    {2, "10", "1", ""},
    {3, "69", "7", "2.253500"},
    {4, "79", "8", "2.511334"},
    {5, "227", "23", "3.236253"},
    {6, "10748", "1089", "2.018434"},
    {7, "10975", "1112", "2.321958"},
    {8, "98548", "9985", "2.064841"},
    {9, "109523", "11097", "2.090224"},
    {10, "208071", "21082", "2.107694"},
    {11, "525665", "53261", "2.098602"},
    {12, "1259401", "127604", "2.071191"},
    {13, "1785066", "180865", "2.049770"},
    {14, "3044467", "308469", "2.172439"},
    {15, "26140802", "2648617", "2.094189"},
    {16, "81466873", "8254320", "2.021982"},
    {17, "107607675", "10902937", "2.147582"},
    {18, "1157543623", "117283690", "2.095357"},
    {19, "5895325790", "597321387", "2.018903"},
    {20, "7052869413", "714605077", "2.074380"},
    {21, "27053934029", "2741136618", "2.023038"},
    {22, "34106803442", "3455741695", "2.055226"},
    {23, "95267540913", "9652620008", "2.032519"},
    {24, "129374344355", "13108361703", "2.031079"},
    {25, "224641885268", "22760981711", "2.054176"},
    {26, "803300000159", "81391306836", "2.110031"},
    {27, "12274141887653", "1243630584251", "2.020459"},
    {28, "13077441887812", "1325021891087", "2.030798"},
    {29, "25351583775465", "2568652475338", "2.036971"},
    {30, "63780609438742", "6462326841763", "2.039154"},
};

constexpr GoldenMuRow kMuPi3[] = {
    {1, "31", "1", ""},
    {2, "4930", "159", "2.225255"},
    {3, "14821", "478", "2.342289"},
    {4, "108677", "3505", "2.023480"},
    {5, "123498", "3983", "2.320380"},
    {6, "1714151", "55284", "2.096515"},
    {7, "3551800", "114551", "2.047419"},
    {8, "5265951", "169835", "2.126720"},
    {9, "19349653", "624056", "2.022641"},
    {10, "24615604", "793891", "2.189908"},
    {11, "314736901", "10150748", "2.057364"},
    {12, "654089406", "21095387", "2.059538"},
    {13, "1622915713", "52341522", "2.083769"},
    {14, "7145752258", "230461475", "2.184225"},
    {15, "244578492485", "7888031672", "2.031550"},
    {16, "496302737228", "16006524819", "2.160820"},
    {17, "21585596193289", "696168598889", "2.048912"},
    {18, "65253091317095", "2104512321486", "2.017121"},
    {19, "86838687510384", "2800680920375", "2.049611"},
    {20, "325769153848247", "10506555082611", "2.034434"},
    {21, "738376995206878", "23813791085597", "2.026878"},
    {22, "1064146149055125", "34320346168208", "2.020155"},
    {23, "1802523144262003", "58134137253805", "2.057247"},
    {24, "10076761870365140", "324991032437233", "2.020858"},
    {25, "11879285014627143", "383125169691038", "2.021449"},
    {26, "21956046884992283", "708116202128271", "2.049213"},
    {27, "99703472554596275", "3215589978204122", "2.009654"},
    {28, "121659519439588558", "3923706180332393", "2.050107"},
    {29, "708001069752539065", "22834120879866087", "2.040614"},
    {30, "2953663798449744818", "95260189699796741", "2.023276"},
};

constexpr GoldenMuRow kMuZeta3[] = {
    {1, "1", "1", ""},
    {2, "5", "4", "2.191267"},
    {3, "6", "5", "3.843922"},
    {4, "113", "94", "2.103378"},
    {5, "119", "99", "2.222511"},
    {6, "232", "193", "2.102718"},
    {7, "351", "292", "2.302278"},
    {8, "1636", "1361", "2.038931"},
    {9, "1987", "1653", "2.309777"},
    {10, "19519", "16238", "2.232018"},
    {11, "177658", "147795", "2.084580"},
    {12, "374835", "311828", "2.057472"},
    {13, "552493", "459623", "2.065833"},
    {14, "927328", "771451", "2.053480"},
    {15, "1479821", "1231074", "2.072380"},
    {16, "3886970", "3233599", "2.138006"},
    {17, "28688611", "23866267", "2.041149"},
    {18, "32575581", "27099866", "2.041133"},
    {19, "61264192", "50966133", "2.114414"},
    {20, "461424925", "383862797", "2.124760"},
    {21, "5136938367", "4273456900", "2.022499"},
    {22, "5598363292", "4657319697", "2.044823"},
    {23, "10735301659", "8930776597", "2.025155"},
    {24, "16333664951", "13588096294", "2.064764"},
    {25, "59736296512", "49695065479", "2.014150"},
    {26, "76069961463", "63283161773", "2.082353"},
    {27, "516156065290", "429394036117", "2.006174"},
    {28, "592226026753", "492677197890", "2.128367"},
    {29, "18282936867880", "15209709972817", "2.007412"},
    {30, "18875162894633", "15702387170707", "2.056200"},
};

constexpr std::string_view kCfPi2[] = {"9", "1", "6", "1", "2", "47", "1", "8", "1", "1", "2", "2", "1", "1", "8", "3", "1", "10", "5", "1", "3", "1", "2", "1", "1", "3", "15"};

constexpr std::string_view kCfPi3[] = {"31", "159", "3", "7", "1", "13", "2", "1", "3", "1", "12", "2", "2", "4", "34", "2", "43", "3", "1", "3", "2"};

constexpr GoldenHistoryRow kHistoryPi2[] = {
    {"11.85078", "Apery", "1976"},
    {"10.02979", "Dvornicich, Viola", "1987"},
    {"5.441243", "Rhin, Viola", "2001"},
};

constexpr GoldenHistoryRow kHistoryZeta3[] = {
    {"13.41782", "Apery", "1979"},
    {"7.377956", "Hata", "2000"},
    {"5.513891", "Rhin, Viola", "2001"},
};

constexpr std::string_view kZeta3Digits = "1.202056903159594285399738";

// "2.253500" -> 2253500; nullopt for anything that is not d+.d+.
std::optional<mpz_class> parse_fixed(std::string_view text) {
  std::string digits;
  bool seen_point = false;
  for (char c : text) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
    } else {
      return std::nullopt;
    }
  }
  if (digits.empty()) return std::nullopt;
  return mpz_class(digits);
}

}  // namespace

std::span<const GoldenMuRow> golden_mu_pi2() { return kMuPi2; }
std::span<const GoldenMuRow> golden_mu_pi3() { return kMuPi3; }
std::span<const GoldenMuRow> golden_mu_zeta3() { return kMuZeta3; }
std::span<const std::string_view> golden_cf_pi2() { return kCfPi2; }
std::span<const std::string_view> golden_cf_pi3() { return kCfPi3; }
std::span<const GoldenHistoryRow> golden_history_pi2() { return kHistoryPi2; }
std::span<const GoldenHistoryRow> golden_history_zeta3() { return kHistoryZeta3; }
std::string_view golden_zeta3_digits() { return kZeta3Digits; }

namespace {

std::optional<unsigned> pi_power(const ConstantId& id) {
  if (std::holds_alternative<Pi>(id)) return 1;
  if (const auto* p = std::get_if<PiPow>(&id)) return p->k;
  return std::nullopt;
}

}  // namespace

std::optional<GoldenMuTable> golden_mu_for(const ConstantId& id) {
  if (std::holds_alternative<Zeta3>(id)) return GoldenMuTable{"mu_zeta3", kMuZeta3};
  const auto k = pi_power(id);
  if (k == 2u) return GoldenMuTable{"mu_pi2", kMuPi2};
  if (k == 3u) return GoldenMuTable{"mu_pi3", kMuPi3};
  return std::nullopt;
}

std::optional<GoldenCf> golden_cf_for(const ConstantId& id) {
  const auto k = pi_power(id);
  if (k == 2u) return GoldenCf{"cf_pi2", kCfPi2};
  if (k == 3u) return GoldenCf{"cf_pi3", kCfPi3};
  return std::nullopt;
}

std::span<const GoldenHistoryRow> golden_history_for(const ConstantId& id) {
  if (std::holds_alternative<Zeta3>(id)) return kHistoryZeta3;
  if (pi_power(id) == 2u) return kHistoryPi2;
  return {};
}

bool GoldenReport::passed() const {
  return rows_compared == rows_expected && exact_mismatches.empty() && beyond_tolerance.empty() &&
         one_ulp.size() <= kAllowedUlpRows;
}

std::vector<std::string> GoldenReport::describe() const {
  std::vector<std::string> out;
  const auto cell = [](const CellDelta& d) {
    std::ostringstream line;
    line << "row " << d.row << " " << d.column << ": computed " << (d.computed.empty() ? "(blank)" : d.computed)
         << ", golden " << (d.golden.empty() ? "(blank)" : d.golden);
    if (d.ulps) line << " (" << (*d.ulps > 0 ? "+" : "") << *d.ulps << " ulp)";
    return line.str();
  };
  for (const CellDelta& d : exact_mismatches) out.push_back("mismatch " + cell(d));
  for (const CellDelta& d : beyond_tolerance) out.push_back("mismatch " + cell(d));
  for (const CellDelta& d : one_ulp) out.push_back("within 1 ulp " + cell(d));
  std::ostringstream summary;
  summary << table << ": " << rows_compared << "/" << rows_expected << (numeric ? " rows" : " terms")
          << " compared, " << exact_mismatches.size() << " exact mismatches";
  if (numeric) {
    summary << ", " << one_ulp.size() << " rows off by 1 ulp (at most " << kAllowedUlpRows << " allowed), "
            << beyond_tolerance.size() << " beyond tolerance";
  }
  summary << ": " << (passed() ? "PASS" : "FAIL");
  out.push_back(summary.str());
  return out;
}

GoldenReport compare_mu_table(const GoldenMuTable& golden, const std::vector<MuRecord>& computed, Rounding mode,
                              std::size_t rows_requested) {
  GoldenReport report;
  report.table = std::string(golden.id);
  report.rows_expected = std::min(rows_requested, golden.rows.size());
  for (std::size_t i = 0; i < report.rows_expected; ++i) {
    const GoldenMuRow& g = golden.rows[i];
    if (i >= computed.size()) {
      report.exact_mismatches.push_back({g.n, "row", "", "present", std::nullopt});
      continue;
    }
    ++report.rows_compared;
    const MuRecord& r = computed[i];
    const std::string p = r.p.get_str();
    const std::string q = r.q.get_str();
    if (p != g.p) report.exact_mismatches.push_back({g.n, "p", p, std::string(g.p), std::nullopt});
    if (q != g.q) report.exact_mismatches.push_back({g.n, "q", q, std::string(g.q), std::nullopt});

    const std::string mu = format_mu(r, mode);
    if (mu.empty() || g.mu.empty()) {
      if (mu.empty() != g.mu.empty()) {
        report.exact_mismatches.push_back({g.n, "mu", mu, std::string(g.mu), std::nullopt});
      }
      continue;
    }
    const auto a = parse_fixed(mu);
    const auto b = parse_fixed(g.mu);
    if (!a || !b) {
      if (mu != g.mu) report.exact_mismatches.push_back({g.n, "mu", mu, std::string(g.mu), std::nullopt});
      continue;
    }
    const mpz_class diff = *a - *b;
    if (diff == 0) continue;
    CellDelta d{g.n, "mu", mu, std::string(g.mu), diff.fits_slong_p() ? std::optional<long>(diff.get_si()) : std::nullopt};
    if (abs(diff) == 1) {
      report.one_ulp.push_back(std::move(d));
    } else {
      report.beyond_tolerance.push_back(std::move(d));
    }
  }
  return report;
}

GoldenReport compare_cf(const GoldenCf& golden, const std::vector<mpz_class>& terms, std::size_t terms_requested) {
  GoldenReport report;
  report.table = std::string(golden.id);
  report.numeric = false;
  report.rows_expected = std::min(terms_requested, golden.terms.size());
  for (std::size_t i = 0; i < report.rows_expected; ++i) {
    if (i >= terms.size()) {
      report.exact_mismatches.push_back({i, "a", "", std::string(golden.terms[i]), std::nullopt});
      continue;
    }
    ++report.rows_compared;
    const std::string a = terms[i].get_str();
    if (a != golden.terms[i]) report.exact_mismatches.push_back({i, "a", a, std::string(golden.terms[i]), std::nullopt});
  }
  return report;
}

}  // namespace exponent_lab::cli
