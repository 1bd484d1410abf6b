// Command-line front end: construct digit streams and witnesses, evaluate
// norm series, and emit evidence reports with deterministic JSON/CSV output.
//
// Subcommands:
//   cf       convergent tables, theta enclosures, digit encoding
//   witness  serialize a named witness bundle
//   verify   evaluate a series and report convergence evidence
//
// Exit codes: 0 success / expectation met, 2 expectation mismatch,
// 3 inconclusive verdict without an expectation, 64 usage error.

#include <cfcircle/cf.hpp>
#include <cfcircle/density.hpp>
#include <cfcircle/io.hpp>
#include <cfcircle/norms.hpp>
#include <cfcircle/ostrowski.hpp>
#include <cfcircle/statconv.hpp>
#include <cfcircle/witness.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace cfcircle;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitUsage = 64;

// ---------------------------------------------------------------------------
// Alpha registry.

CFDigits alpha_from_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--alpha", "cannot open " + path);
  std::vector<long long> digits;
  std::string token;
  while (in >> token) {
    for (char& c : token)
      if (c == ',') c = ' ';
    std::istringstream parts(token);
    long long v;
    while (parts >> v) digits.push_back(v);
  }
  if (digits.empty())
    throw CLI::ValidationError("--alpha", "no digits in " + path);
  return CFDigits::from_list(std::move(digits), "list:" + path);
}

CFDigits make_alpha(const std::string& key, std::uint64_t default_seed) {
  if (key == "golden") return CFDigits::golden();
  if (key == "silver") return CFDigits::silver();
  if (key == "square-spike" || key == "rule:square-spike")
    return CFDigits::square_spike();
  const std::string rb = "random-bounded:";
  if (key.rfind(rb, 0) == 0) {
    const std::string args = key.substr(rb.size());
    const size_t comma = args.find(',');
    try {
      const long long bound = std::stoll(args.substr(0, comma));
      std::uint64_t seed = default_seed;
      if (comma != std::string::npos)
        seed = std::stoull(args.substr(comma + 1));
      return CFDigits::random_bounded(bound, seed);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--alpha", "bad random-bounded spec: " + key);
    }
  }
  const std::string list = "list:";
  if (key.rfind(list, 0) == 0) return alpha_from_list_file(key.substr(5));
  throw CLI::ValidationError(
      "--alpha", "unknown key '" + key +
                     "' (golden, silver, square-spike, "
                     "random-bounded:<M[,seed]>, list:<path>)");
}

std::vector<Rat> parse_rat_list(const std::string& text,
                                const std::string& flag) {
  std::vector<Rat> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(parse_rational(item));
    } catch (const std::exception& err) {
      throw CLI::ValidationError(flag, err.what());
    }
  }
  if (out.empty()) throw CLI::ValidationError(flag, "empty list");
  return out;
}

std::vector<long long> parse_int_list(const std::string& text,
                                      const std::string& flag) {
  std::vector<long long> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "bad integer '" + item + "'");
    }
  }
  if (out.empty()) throw CLI::ValidationError(flag, "empty list");
  return out;
}

void emit(const json& doc, const std::string& out_path) {
  const std::string text = canonical_dump(doc);
  std::cout << text << "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out)
      throw CLI::ValidationError("--out", "cannot write " + out_path);
    out << text << "\n";
  }
}

// ---------------------------------------------------------------------------
// cf subcommand.

struct CfArgs {
  std::string alpha = "golden";
  long long n = 10;
  std::uint64_t seed = 1;
  std::string encode_value;
  long long depth = 20;
  long long theta_n = -1;
  std::string width = "1e-12";
  bool csv = false;
  std::string out_path;
};

int run_cf(const CfArgs& args) {
  const ContinuedFraction cf(make_alpha(args.alpha, args.seed));
  const Rat width = parse_rational(args.width);
  if (width <= 0) throw CLI::ValidationError("--width", "must be positive");

  if (!args.encode_value.empty()) {
    const Rat beta = parse_rational(args.encode_value);
    const OstrowskiDigits digits = encode(cf, beta, args.depth);
    json doc;
    doc["alpha"] = cf.digits().descriptor();
    doc["value"] = rat_to_string(beta);
    json ds = json::array();
    for (long long k = 0; k <= args.depth; ++k) ds.push_back(digits.at(k));
    doc["digits"] = std::move(ds);
    doc["support"] = digits.support(args.depth);
    const Enclosure back = decode(cf, digits, args.depth, width);
    doc["decode"] = to_json(back);
    // The digit prefix truncates an (generally infinite) expansion, so the
    // original value is only recovered up to the telescoped truncation tail.
    const Rat allowance =
        cf.theta_abs_upper(args.depth) + cf.theta_abs_upper(args.depth + 1);
    doc["truncation_allowance"] = rat_to_string(allowance);
    doc["decode_contains_value"] = back.widened(allowance).contains(beta);
    emit(doc, args.out_path);
    return kExitOk;
  }

  if (args.theta_n >= 0) {
    const Enclosure th = cf.theta(args.theta_n, width);
    json doc;
    doc["alpha"] = cf.digits().descriptor();
    doc["n"] = args.theta_n;
    doc["theta"] = to_json(th);
    doc["theta_decimal"] = json{{"lo", fixed_decimal(th.lo, 15)},
                                {"hi", fixed_decimal(th.hi, 15)}};
    doc["abs_lower"] = rat_to_string(cf.theta_abs_lower(args.theta_n));
    doc["abs_upper"] = rat_to_string(cf.theta_abs_upper(args.theta_n));
    emit(doc, args.out_path);
    return kExitOk;
  }

  if (args.csv) {
    std::ostringstream os;
    write_convergents_csv(os, cf, args.n);
    std::cout << os.str();
    if (!args.out_path.empty()) {
      std::ofstream out(args.out_path);
      out << os.str();
    }
    return kExitOk;
  }
  json doc;
  doc["alpha"] = cf.digits().descriptor();
  json rows = json::array();
  for (long long i = 0; i <= args.n; ++i) {
    json row;
    row["n"] = i;
    if (i >= 1) row["a"] = cf.a(i);
    row["p"] = cf.p(i).str();
    row["q"] = cf.q(i).str();
    rows.push_back(std::move(row));
  }
  doc["convergents"] = std::move(rows);
  emit(doc, args.out_path);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// witness subcommand.

struct WitnessArgs {
  std::string kind;
  std::string alpha = "golden";
  std::uint64_t seed = 1;
  std::string nu = "2";
  long long s1 = 1;
  long long count = 8;
  long long depth = 200;
  std::string out_path;
};

struct BuiltWitness {
  ContinuedFraction cf;
  OstrowskiDigits beta;
  std::optional<IntervalFamily> family;
};

BuiltWitness build_witness(const std::string& kind, const std::string& alpha,
                           std::uint64_t seed, const Rat& nu, long long s1,
                           long long count) {
  if (kind == "gap-family") {
    ContinuedFraction cf(make_alpha(alpha, seed));
    IntervalFamily family = family_from_exponent(nu, s1);
    OstrowskiDigits beta = gap_family_witness(cf, family);
    return BuiltWitness{std::move(cf), std::move(beta), std::move(family)};
  }
  if (kind == "half-digit") {
    ContinuedFraction cf(make_alpha(alpha, seed));
    const auto blocks = rising_digit_indices(cf, count);
    OstrowskiDigits beta = half_digit_witness(cf, blocks);
    IntervalFamily family = family_from_block_indices(blocks, "blocks");
    return BuiltWitness{std::move(cf), std::move(beta), std::move(family)};
  }
  if (kind == "square-spike") {
    SquareSpikeBundle bundle = square_spike_witness();
    ContinuedFraction cf(bundle.alpha);
    return BuiltWitness{std::move(cf), std::move(bundle.beta),
                        std::move(bundle.family)};
  }
  if (kind == "sparse-squares") {
    ContinuedFraction cf(make_alpha(alpha, seed));
    OstrowskiDigits beta = square_support_witness(cf);
    return BuiltWitness{std::move(cf), std::move(beta), std::nullopt};
  }
  throw CLI::ValidationError(
      "kind", "unknown witness '" + kind +
                  "' (gap-family, half-digit, square-spike, sparse-squares)");
}

int run_witness(const WitnessArgs& args) {
  const Rat nu = parse_rational(args.nu);
  BuiltWitness w =
      build_witness(args.kind, args.alpha, args.seed, nu, args.s1, args.count);
  json doc;
  doc["kind"] = args.kind;
  doc["alpha"] = w.cf.digits().descriptor();
  doc["beta"] = w.beta.descriptor();
  doc["support"] = w.beta.support(args.depth);
  if (w.family) {
    json intervals = json::array();
    for (long long i = 1; i <= 8; ++i) {
      if (auto sz = w.family->size(); sz && i > *sz) break;
      if (w.family->s(i) > args.depth) break;
      intervals.push_back({{"i", i},
                           {"s", w.family->s(i)},
                           {"t", w.family->t(i)}});
    }
    doc["family"] = json{{"descriptor", w.family->descriptor()},
                         {"intervals", std::move(intervals)}};
  }
  const ValidationResult check = validate(w.cf, w.beta, args.depth);
  doc["valid"] = check.ok;
  doc["unsaturated_even_count"] = check.unsaturated_even_count;
  emit(doc, args.out_path);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify subcommand.

struct VerifyArgs {
  std::string alpha = "golden";
  std::string witness;
  std::string beta_spec;
  std::string selector = "qn";
  long long N = 1000;
  std::string eps = "1e-2";
  std::string checkpoints;
  std::string width = "1e-9";
  long long depth = 1000000;
  std::string nu = "2";
  long long s1 = 1;
  long long count = 8;
  std::string exclude = "auto";
  std::string window;
  std::string window_slack = "0.01";
  std::string expect;
  std::uint64_t seed = 1;
  bool include_entries = false;
  bool csv = false;
  std::string out_path;
  std::string config_path;
};

json config_to_json(const VerifyArgs& a) {
  json doc;
  doc["alpha"] = a.alpha;
  doc["witness"] = a.witness;
  doc["beta"] = a.beta_spec;
  doc["selector"] = a.selector;
  doc["N"] = a.N;
  doc["eps"] = a.eps;
  doc["checkpoints"] = a.checkpoints;
  doc["width"] = a.width;
  doc["depth"] = a.depth;
  doc["nu"] = a.nu;
  doc["s1"] = a.s1;
  doc["count"] = a.count;
  doc["exclude"] = a.exclude;
  doc["window"] = a.window;
  doc["window_slack"] = a.window_slack;
  doc["expect"] = a.expect;
  doc["seed"] = a.seed;
  return doc;
}

// Fills fields from the config file; a field set explicitly on the command
// line wins over the file.
void apply_config_file(VerifyArgs& a, const CLI::App* cmd) {
  if (a.config_path.empty()) return;
  std::ifstream in(a.config_path);
  if (!in)
    throw CLI::ValidationError("--config", "cannot open " + a.config_path);
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& err) {
    throw CLI::ValidationError("--config", err.what());
  }
  auto flag_given = [cmd](const char* flag) {
    return cmd->count(flag) > 0;
  };
  auto set_str = [&doc, &flag_given](const char* key, const char* flag,
                                     std::string& field) {
    if (doc.contains(key) && !flag_given(flag))
      field = doc[key].get<std::string>();
  };
  auto set_ll = [&doc, &flag_given](const char* key, const char* flag,
                                    long long& field) {
    if (doc.contains(key) && !flag_given(flag))
      field = doc[key].get<long long>();
  };
  set_str("alpha", "--alpha", a.alpha);
  set_str("witness", "--witness", a.witness);
  set_str("beta", "--beta", a.beta_spec);
  set_str("selector", "--selector", a.selector);
  set_ll("N", "--N", a.N);
  set_str("eps", "--eps", a.eps);
  set_str("checkpoints", "--checkpoints", a.checkpoints);
  set_str("width", "--width", a.width);
  set_ll("depth", "--depth", a.depth);
  set_str("nu", "--nu", a.nu);
  set_ll("s1", "--s1", a.s1);
  set_ll("count", "--count", a.count);
  set_str("exclude", "--exclude", a.exclude);
  set_str("window", "--window", a.window);
  set_str("window_slack", "--window-slack", a.window_slack);
  set_str("expect", "--expect", a.expect);
  if (doc.contains("seed") && !flag_given("--seed"))
    a.seed = doc["seed"].get<std::uint64_t>();
}

int run_verify(VerifyArgs args, const CLI::App* cmd) {
  apply_config_file(args, cmd);

  const Rat width = parse_rational(args.width);
  if (width <= 0) throw CLI::ValidationError("--width", "must be positive");
  if (args.N < 1) throw CLI::ValidationError("--N", "must be >= 1");
  if (args.depth < 8) throw CLI::ValidationError("--depth", "must be >= 8");
  const std::vector<Rat> eps_grid = parse_rat_list(args.eps, "--eps");
  const Selector selector = args.selector == "xn" ? Selector::xn
                            : args.selector == "qn"
                                ? Selector::qn
                                : throw CLI::ValidationError(
                                      "--selector", "must be qn or xn");

  std::vector<long long> checkpoints;
  if (!args.checkpoints.empty()) {
    checkpoints = parse_int_list(args.checkpoints, "--checkpoints");
  } else {
    for (long long cp : {args.N / 4, args.N / 2, args.N})
      if (cp >= 1 &&
          (checkpoints.empty() || cp > checkpoints.back()))
        checkpoints.push_back(cp);
  }

  // Build alpha/beta (optionally through a witness construction).
  std::optional<BuiltWitness> witness;
  std::optional<ContinuedFraction> plain_cf;
  if (!args.witness.empty()) {
    witness = build_witness(args.witness, args.alpha, args.seed,
                            parse_rational(args.nu), args.s1, args.count);
  } else {
    plain_cf.emplace(make_alpha(args.alpha, args.seed));
    if (args.beta_spec.empty() || args.beta_spec == "zero") {
      // fall through; beta constructed below
    } else {
      throw CLI::ValidationError("--beta",
                                 "only 'zero' or a --witness is supported");
    }
  }
  ContinuedFraction& cf = witness ? witness->cf : *plain_cf;
  const OstrowskiDigits beta =
      witness ? witness->beta : OstrowskiDigits::zero(cf.digits());

  cf.set_depth_budget(args.depth);

  // Decay calibration when a family is in play.
  std::optional<DecayParams> params;
  if (witness && witness->family) {
    try {
      params = derive_decay_params(cf, *witness->family, eps_grid.front(),
                                   400, 100000);
    } catch (const RefinementError&) {
      params = std::nullopt;
    }
  }

  // Exclusion set.
  std::optional<IndexSet> exclusion;
  if (args.exclude == "auto") {
    if (selector == Selector::qn && witness && witness->family && params) {
      // For the qn selector, series index n equals the digit index, so the
      // predicted exceptional region applies verbatim.
      exclusion =
          predicted_exception_set(*witness->family, params->m, params->i0,
                                  args.N);
    } else if (selector == Selector::qn && witness &&
               args.witness == "sparse-squares" && params == std::nullopt) {
      // Margin around each support point k^2, from the decay rate.
      try {
        DecayParams p;
        p.lambda_hat = cf.lambda_hat(400);
        p.m = decay_m(p.lambda_hat, eps_grid.front());
        p.i0 = 1;
        params = p;
        std::vector<long long> idx;
        for (long long j = 1; j * j <= args.N + p.m; ++j)
          for (long long v = std::max(1LL, j * j - p.m);
               v <= std::min(args.N, j * j + p.m); ++v)
            idx.push_back(v);
        exclusion = make_index_set(std::move(idx), "support-margin");
      } catch (const RefinementError&) {
      }
    }
  } else if (args.exclude != "none") {
    throw CLI::ValidationError("--exclude", "must be auto or none");
  }

  const NormSeries series = norm_series(cf, beta, selector, args.N, width);
  const EvidenceReport report =
      stat_report(series, eps_grid, checkpoints, exclusion, params);

  json doc;
  doc["config"] = config_to_json(args);
  doc["config_digest"] = document_digest(doc["config"]);
  doc["report"] = to_json(report);

  // Optional window containment over the witness's distinguished positions.
  if (!args.window.empty()) {
    const std::vector<Rat> ab = parse_rat_list(args.window, "--window");
    if (ab.size() != 2)
      throw CLI::ValidationError("--window", "need exactly 'a,b'");
    const Rat slack = parse_rational(args.window_slack);
    IndexSet at{{}, "none"};
    if (selector == Selector::qn && witness && witness->family) {
      at = complement_support(*witness->family, args.N);
    } else if (selector == Selector::xn && witness && witness->family) {
      const MergedSequence xs = merged_sequence(cf, args.N);
      std::vector<long long> gap_ids;
      const long long from = params ? params->i0 + 1 : 1;
      for (long long i = from;; ++i) {
        if (auto sz = witness->family->size(); sz && i > *sz) break;
        if (witness->family->s(i) > args.N) break;
        gap_ids.push_back(i);
      }
      at = midrange_block_set(cf, xs, *witness->family, gap_ids, "midrange");
    }
    doc["window_check"] = to_json(window_check(series, at, ab[0], ab[1],
                                               slack));
    doc["window_positions"] = to_json(at);
  }

  // Cross-check observed exceptional indices against the predicted set.
  if (exclusion) {
    doc["cross_check"] =
        to_json(exception_cross_check(series, *exclusion, eps_grid.front()));
    doc["exclusion_set"] = to_json(*exclusion);
  }

  if (args.csv) {
    std::ostringstream os;
    write_series_csv(os, series, eps_grid.front());
    std::cout << os.str();
    if (!args.out_path.empty()) {
      std::ofstream out(args.out_path);
      out << os.str();
    }
  } else {
    if (args.include_entries) {
      doc["series"] = to_json(series, true);
    }
    emit(doc, args.out_path);
  }

  // Exit code from the verdict and the optional expectation.
  const std::string verdict = to_string(report.verdict);
  if (!args.expect.empty()) {
    std::string want = args.expect;
    if (want == "member") want = "for";
    if (want != "for" && want != "against" && want != "inconclusive")
      throw CLI::ValidationError(
          "--expect", "must be member, against, or inconclusive");
    return verdict == want ? kExitOk : kExitMismatch;
  }
  return report.verdict == Verdict::inconclusive ? kExitInconclusive
                                                 : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact continued-fraction digit machinery: convergents, "
               "digit expansions, and distance-to-integer evidence reports"};
  app.require_subcommand(1);

  CfArgs cf_args;
  auto* cmd_cf = app.add_subcommand("cf", "Convergents, theta, encoding");
  cmd_cf->add_option("--alpha", cf_args.alpha, "Digit stream key");
  cmd_cf->add_option("--n", cf_args.n, "Last convergent index");
  cmd_cf->add_option("--seed", cf_args.seed, "Seed for random-bounded");
  cmd_cf->add_option("--encode", cf_args.encode_value,
                     "Encode a rational value into digits");
  cmd_cf->add_option("--depth", cf_args.depth, "Digit depth for --encode");
  cmd_cf->add_option("--theta", cf_args.theta_n,
                     "Print the theta enclosure at this index");
  cmd_cf->add_option("--width", cf_args.width, "Enclosure width target");
  cmd_cf->add_flag("--csv", cf_args.csv, "CSV instead of JSON");
  cmd_cf->add_option("--out", cf_args.out_path, "Also write to this file");

  WitnessArgs w_args;
  auto* cmd_witness =
      app.add_subcommand("witness", "Serialize a witness bundle");
  cmd_witness->add_option("kind", w_args.kind,
                          "gap-family | half-digit | square-spike | "
                          "sparse-squares")
      ->required();
  cmd_witness->add_option("--alpha", w_args.alpha, "Digit stream key");
  cmd_witness->add_option("--seed", w_args.seed, "Seed for random-bounded");
  cmd_witness->add_option("--nu", w_args.nu, "Family exponent (gap-family)");
  cmd_witness->add_option("--s1", w_args.s1, "First interval start");
  cmd_witness->add_option("--count", w_args.count,
                          "Block index count (half-digit)");
  cmd_witness->add_option("--depth", w_args.depth,
                          "Preview depth for supports");
  cmd_witness->add_option("--out", w_args.out_path, "Also write to this file");

  VerifyArgs v_args;
  auto* cmd_verify =
      app.add_subcommand("verify", "Evaluate a series and report evidence");
  cmd_verify->add_option("--config", v_args.config_path,
                         "JSON config (flags override)");
  cmd_verify->add_option("--alpha", v_args.alpha, "Digit stream key");
  cmd_verify->add_option("--witness", v_args.witness,
                         "Witness kind for beta");
  cmd_verify->add_option("--beta", v_args.beta_spec, "zero (default)");
  cmd_verify->add_option("--selector", v_args.selector, "qn | xn");
  cmd_verify->add_option("--N", v_args.N, "Series length");
  cmd_verify->add_option("--eps", v_args.eps,
                         "Comma-separated thresholds in (0, 1/2]");
  cmd_verify->add_option("--checkpoints", v_args.checkpoints,
                         "Comma-separated checkpoints (default N/4,N/2,N)");
  cmd_verify->add_option("--width", v_args.width, "Enclosure width target");
  cmd_verify->add_option("--depth", v_args.depth, "Refinement depth budget");
  cmd_verify->add_option("--nu", v_args.nu, "Family exponent (gap-family)");
  cmd_verify->add_option("--s1", v_args.s1, "First interval start");
  cmd_verify->add_option("--count", v_args.count,
                         "Block index count (half-digit)");
  cmd_verify->add_option("--exclude", v_args.exclude,
                         "auto | none (predicted exceptional set)");
  cmd_verify->add_option("--window", v_args.window,
                         "Window 'a,b' checked at witness positions");
  cmd_verify->add_option("--window-slack", v_args.window_slack,
                         "Window slack");
  cmd_verify->add_option("--expect", v_args.expect,
                         "member | against | inconclusive");
  cmd_verify->add_option("--seed", v_args.seed, "Seed for random-bounded");
  cmd_verify->add_flag("--entries", v_args.include_entries,
                       "Embed per-index enclosures in the JSON");
  cmd_verify->add_flag("--csv", v_args.csv, "Series CSV instead of JSON");
  cmd_verify->add_option("--out", v_args.out_path, "Also write to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (cmd_cf->parsed()) return run_cf(cf_args);
    if (cmd_witness->parsed()) return run_witness(w_args);
    if (cmd_verify->parsed()) return run_verify(v_args, cmd_verify);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
