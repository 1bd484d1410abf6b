// Rational parsing, canonical JSON, and CSV output.

#include <cfcircle/io.hpp>

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cfcircle {

std::string rat_to_string(const Rat& v) {
  std::ostringstream os;
  os << num(v);
  if (den(v) != 1) os << "/" << den(v);
  return os.str();
}

namespace {

Int parse_int(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  size_t pos = 0;
  bool neg = false;
  if (text[0] == '+' || text[0] == '-') {
    neg = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw std::invalid_argument("sign without digits");
  Int v = 0;
  for (; pos < text.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(text[pos])))
      throw std::invalid_argument("invalid integer: " + text);
    v = v * 10 + (text[pos] - '0');
  }
  return neg ? -v : v;
}

// Mantissa of the form [sign] digits [. digits] as an exact rational.
Rat parse_decimal(const std::string& text) {
  const size_t dot = text.find('.');
  if (dot == std::string::npos) return Rat(parse_int(text));
  const std::string head = text.substr(0, dot);
  const std::string frac = text.substr(dot + 1);
  if (frac.empty()) throw std::invalid_argument("trailing decimal point");
  for (char c : frac)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("invalid decimal: " + text);
  const bool neg = !head.empty() && head[0] == '-';
  const Int whole =
      (head.empty() || head == "-" || head == "+") ? Int(0) : parse_int(head);
  const Int scale = ipow(Int(10), static_cast<unsigned>(frac.size()));
  const Int frac_num = parse_int(frac);
  Rat mag = Rat(boost::multiprecision::abs(whole)) + Rat(frac_num, scale);
  return neg ? -mag : mag;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  const size_t slash = text.find('/');
  if (slash != std::string::npos) {
    const Int n = parse_int(text.substr(0, slash));
    const Int d = parse_int(text.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rat(n, d);
  }
  size_t e = text.find('e');
  if (e == std::string::npos) e = text.find('E');
  if (e != std::string::npos) {
    const Rat mantissa = parse_decimal(text.substr(0, e));
    const Int expo = parse_int(text.substr(e + 1));
    if (expo > 4096 || expo < -4096)
      throw std::invalid_argument("exponent out of range: " + text);
    const unsigned mag = static_cast<unsigned>(
        expo < 0 ? -expo : expo);
    const Int scale = ipow(Int(10), mag);
    return expo < 0 ? mantissa / Rat(scale) : mantissa * Rat(scale);
  }
  return parse_decimal(text);
}

std::string quantized_to_decimal(std::int64_t value) {
  return fixed_decimal(Rat(value, kQuantDen), 15);
}

json to_json(const Enclosure& e) {
  return json{{"lo", rat_to_string(e.lo)}, {"hi", rat_to_string(e.hi)}};
}

json to_json(const DensityReport& r) {
  json rows = json::array();
  for (size_t i = 0; i < r.checkpoints.size(); ++i) {
    rows.push_back({{"checkpoint", r.checkpoints[i]},
                    {"count", r.counts[i]},
                    {"ratio", rat_to_string(r.ratios[i])},
                    {"ratio_decimal", fixed_decimal(r.ratios[i], 6)}});
  }
  return json{{"profile", rows},
              {"ratios_nonincreasing", r.ratios_nonincreasing}};
}

json to_json(const IndexSet& s, long long preview_limit) {
  json out;
  out["descriptor"] = s.descriptor;
  out["count"] = s.indices.size();
  json preview = json::array();
  const long long show =
      std::min<long long>(preview_limit,
                          static_cast<long long>(s.indices.size()));
  for (long long i = 0; i < show; ++i) preview.push_back(s.indices[i]);
  out["preview"] = std::move(preview);
  return out;
}

json to_json(const SeriesEntry& e) {
  return json{{"index", e.index},
              {"n", e.n},
              {"r", e.r},
              {"lo", quantized_to_decimal(e.lo_q)},
              {"hi", quantized_to_decimal(e.hi_q)},
              {"unknown", e.unknown}};
}

json to_json(const NormSeries& s, bool include_entries) {
  json out;
  out["selector"] = s.selector == Selector::qn ? "qn" : "xn";
  out["N"] = s.N;
  out["target_width"] = rat_to_string(s.target_width);
  out["alpha"] = s.alpha_descriptor;
  out["beta"] = s.beta_descriptor;
  if (include_entries) {
    json rows = json::array();
    for (const auto& e : s.entries) rows.push_back(to_json(e));
    out["entries"] = std::move(rows);
  }
  return out;
}

namespace {

json stats_to_json(const std::vector<CheckpointStat>& stats) {
  json rows = json::array();
  for (const auto& st : stats) {
    rows.push_back({{"checkpoint", st.checkpoint},
                    {"count", st.count},
                    {"ratio", rat_to_string(st.ratio)},
                    {"ratio_decimal", fixed_decimal(st.ratio, 6)}});
  }
  return rows;
}

}  // namespace

json to_json(const EvidenceReport& r) {
  json out;
  out["selector"] = r.selector == Selector::qn ? "qn" : "xn";
  out["N"] = r.N;
  out["checkpoints"] = r.checkpoints;
  out["verdict"] = to_string(r.verdict);
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"eps", rat_to_string(row.eps)},
                    {"below", row.below},
                    {"above", row.above},
                    {"unknown", row.unknown},
                    {"exceptional", stats_to_json(row.exceptional)},
                    {"residual", stats_to_json(row.residual)},
                    {"certified_above", stats_to_json(row.certified_above)},
                    {"exceptional_nonincreasing",
                     row.exceptional_nonincreasing},
                    {"residual_nonincreasing", row.residual_nonincreasing}});
  }
  out["rows"] = std::move(rows);
  if (r.exclusion) {
    out["exclusion"] = json{{"descriptor", r.exclusion->descriptor},
                            {"profile", stats_to_json(r.exclusion->profile)},
                            {"nonincreasing", r.exclusion->nonincreasing}};
  }
  if (r.params) {
    out["params"] = json{{"lambda_hat", rat_to_string(r.params->lambda_hat)},
                         {"lambda_hat_decimal",
                          fixed_decimal(r.params->lambda_hat, 10)},
                         {"m", r.params->m},
                         {"i0", r.params->i0}};
  }
  return out;
}

json to_json(const WindowCheckResult& r) {
  return json{{"window", to_json(r.window)},
              {"slack", rat_to_string(r.slack)},
              {"checked", r.entries.size()},
              {"pass", r.pass},
              {"fail", r.fail},
              {"unknown", r.unknown},
              {"all_pass", r.all_pass}};
}

json to_json(const CrossCheckResult& r) {
  json violations = json::array();
  const size_t show = std::min<size_t>(r.violations.size(), 64);
  for (size_t i = 0; i < show; ++i) violations.push_back(r.violations[i]);
  return json{{"eps", rat_to_string(r.eps)},
              {"observed_above", r.observed_above},
              {"predicted_in_range", r.predicted_in_range},
              {"violation_count", r.violations.size()},
              {"violations_preview", std::move(violations)},
              {"unknown_outside", r.unknown_outside},
              {"contained", r.contained},
              {"vacuous", r.vacuous}};
}

json to_json(const MergedSequence& xs, long long preview_limit) {
  json out;
  out["count"] = xs.entries.size();
  json rows = json::array();
  const long long show =
      std::min<long long>(preview_limit,
                          static_cast<long long>(xs.entries.size()));
  for (long long i = 0; i < show; ++i) {
    const auto& e = xs.entries[static_cast<size_t>(i)];
    rows.push_back({{"index", e.index},
                    {"x", e.x.str()},
                    {"n", e.n},
                    {"r", e.r}});
  }
  out["preview"] = std::move(rows);
  return out;
}

std::string canonical_dump(const json& doc) { return doc.dump(2); }

std::string document_digest(const json& doc) {
  return fnv1a_digest(doc.dump());
}

void write_convergents_csv(std::ostream& os, const ContinuedFraction& cf,
                           long long n) {
  os << "n,a,p,q\n";
  for (long long i = 0; i <= n; ++i) {
    os << i << ",";
    if (i >= 1) os << cf.a(i);
    os << "," << cf.p(i) << "," << cf.q(i) << "\n";
  }
}

void write_series_csv(std::ostream& os, const NormSeries& s, const Rat& eps) {
  os << "index,n,r,lo,hi,class\n";
  for (const auto& e : s.entries) {
    const char* cls = "straddle";
    if (e.unknown) {
      cls = "unknown";
    } else if (Rat(e.hi_q, kQuantDen) < eps) {
      cls = "below";
    } else if (Rat(e.lo_q, kQuantDen) >= eps) {
      cls = "above";
    }
    os << e.index << "," << e.n << "," << e.r << ","
       << quantized_to_decimal(e.lo_q) << "," << quantized_to_decimal(e.hi_q)
       << "," << cls << "\n";
  }
}

void write_merged_csv(std::ostream& os, const MergedSequence& xs) {
  os << "index,x,n,r\n";
  for (const auto& e : xs.entries)
    os << e.index << "," << e.x << "," << e.n << "," << e.r << "\n";
}

void write_density_csv(std::ostream& os, const DensityReport& r) {
  os << "checkpoint,count,ratio\n";
  for (size_t i = 0; i < r.checkpoints.size(); ++i)
    os << r.checkpoints[i] << "," << r.counts[i] << ","
       << fixed_decimal(r.ratios[i], 6) << "\n";
}

}  // namespace cfcircle
