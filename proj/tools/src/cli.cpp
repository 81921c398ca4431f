#include "charp_cli/cli.hpp"

#include <algorithm>
#include <future>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "charp/cartier.hpp"
#include "charp/error.hpp"
#include "charp/frobenius.hpp"
#include "charp/json.hpp"
#include "charp/random.hpp"
#include "charp/report.hpp"
#include "charp/valuation.hpp"

namespace charp::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint32_t p = 2;
  unsigned m = 1;
  std::size_t vars = 2;
  std::uint64_t e = 1;
  std::size_t precision_cap = 4096;
  std::uint64_t seed = 0;
  bool pretty = false;
};

std::string read_input(const std::string& arg, std::istream& in) {
  if (arg != "-") return arg;
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string scalar_text(const Json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

void print_pretty(const Json& j, std::ostream& out) {
  if (!j.is_object()) {
    out << scalar_text(j) << "\n";
    return;
  }
  std::size_t width = 0;
  for (const auto& [key, value] : j.items()) width = std::max(width, key.size());
  for (const auto& [key, value] : j.items()) {
    out << key << std::string(width - key.size(), ' ') << "  " << scalar_text(value) << "\n";
  }
}

void emit(const Json& j, const Globals& g, std::ostream& out) {
  if (g.pretty) {
    print_pretty(j, out);
  } else {
    out << j.dump() << "\n";
  }
}

const FieldContext& field(const Globals& g) { return make_context(g.p, g.m); }

void require_vars(const Globals& g) {
  if (g.vars == 0) throw UsageError("--vars must be at least 1");
}

void require_level(std::uint64_t e, const char* flag) {
  if (e == 0) throw UsageError(std::string(flag) + " must be at least 1");
}

Json value_json(const ValuationValue& v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

EmbeddingValuation make_valuation(const FieldContext& ctx, const Globals& g,
                                  const std::vector<std::string>& specs) {
  if (g.vars < 2) throw UsageError("an embedding valuation needs --vars >= 2");
  if (specs.size() != g.vars - 1) {
    throw UsageError("need one --stream per variable after the first (" +
                     std::to_string(g.vars - 1) + "), got " + std::to_string(specs.size()));
  }
  std::vector<SeriesStream> images;
  for (const auto& s : specs) images.push_back(streams::parse(s, ctx));
  ValuationOptions options;
  options.precision_cap = g.precision_cap;
  options.initial_precision = std::min<std::size_t>(options.initial_precision, g.precision_cap);
  if (g.precision_cap == 0) throw UsageError("--precision-cap must be positive");
  return EmbeddingValuation(ctx, std::move(images), options);
}

// ---------------------------------------------------------------------------

int cmd_decompose(const Globals& g, const std::string& input, std::istream& in,
                  std::ostream& out) {
  require_vars(g);
  require_level(g.e, "--e");
  const FieldContext& ctx = field(g);
  const auto names = default_var_names(g.vars);
  const MultiPoly f = parse_poly(read_input(input, in), ctx, names);

  const FrobDecomposition d = decompose(f, g.e);
  std::vector<const std::pair<const Monomial, MultiPoly>*> entries;
  for (const auto& entry : d.components) entries.push_back(&entry);
  std::sort(entries.begin(), entries.end(),
            [](auto* a, auto* b) { return BasisOrder{}(a->first, b->first); });
  Json result = Json::object();
  for (const auto* entry : entries) {
    result[entry->first.to_string(names)] = entry->second.to_string(names);
  }
  emit(result, g, out);
  return kExitOk;
}

struct CartierArgs {
  std::vector<std::string> multipliers;
  std::string input;
  std::string inner_multiplier;
  std::optional<std::uint64_t> inner_level;
  std::string ideal;
  std::optional<std::uint64_t> max_level;
  std::size_t trials = 100;
};

const std::string& single_multiplier(const CartierArgs& a) {
  if (a.multipliers.size() != 1) throw UsageError("expected exactly one -g multiplier");
  return a.multipliers.front();
}

int cmd_cartier(const std::string& action, const Globals& g, const CartierArgs& a,
                std::istream& in, std::ostream& out) {
  require_vars(g);
  require_level(g.e, "--e");
  const FieldContext& ctx = field(g);
  const auto names = default_var_names(g.vars);
  auto poly = [&](const std::string& text) { return parse_poly(read_input(text, in), ctx, names); };

  if (action == "apply") {
    if (a.input.empty()) throw UsageError("cartier apply needs an input polynomial");
    const CartierMap phi(g.e, poly(single_multiplier(a)));
    const MultiPoly f = poly(a.input);
    emit({{"level", g.e},
          {"multiplier", phi.multiplier().to_string(names)},
          {"input", f.to_string(names)},
          {"result", apply(phi, f).to_string(names)}},
         g, out);
    return kExitOk;
  }
  if (action == "compose") {
    const std::uint64_t inner_level = a.inner_level.value_or(g.e);
    require_level(inner_level, "--inner-e");
    const CartierMap outer(g.e, poly(single_multiplier(a)));
    const CartierMap inner(inner_level, a.inner_multiplier.empty() ? outer.multiplier()
                                                                   : poly(a.inner_multiplier));
    const CartierMap composite = compose(outer, inner);
    emit({{"level", composite.level()},
          {"multiplier", composite.multiplier().to_string(names)},
          {"outer", {{"level", outer.level()}, {"multiplier", outer.multiplier().to_string(names)}}},
          {"inner", {{"level", inner.level()}, {"multiplier", inner.multiplier().to_string(names)}}}},
         g, out);
    return kExitOk;
  }
  if (action == "split-check") {
    const CartierMap phi(g.e, poly(single_multiplier(a)));
    const MultiPoly one = MultiPoly::constant(ctx, g.vars, ctx.one());
    emit({{"level", g.e},
          {"multiplier", phi.multiplier().to_string(names)},
          {"image_of_one", apply(phi, one).to_string(names)},
          {"is_splitting", is_splitting(phi)}},
         g, out);
    return kExitOk;
  }
  if (action == "compat") {
    if (a.multipliers.empty()) throw UsageError("cartier compat needs at least one -g");
    if (a.ideal.empty()) throw UsageError("cartier compat needs -J");
    const std::uint64_t max_level = a.max_level.value_or(g.e);
    require_level(max_level, "--e-max");
    const std::uint64_t min_level = a.max_level ? 1 : g.e;
    const MonomialIdeal ideal = parse_monomial_ideal(a.ideal, ctx, names);
    std::vector<MultiPoly> gs;
    for (const auto& text : a.multipliers) gs.push_back(poly(text));
    for (std::uint64_t e = min_level; e <= max_level; ++e) {
      // Fail on oversized sweeps before computing anything.
      free_basis(g.vars, g.p, e);
    }
    Json checks = Json::array();
    bool all = true;
    for (std::uint64_t e = min_level; e <= max_level; ++e) {
      for (const auto& mult : gs) {
        const bool ok = check_compatible(CartierMap(e, mult), ideal);
        all = all && ok;
        checks.push_back({{"level", e}, {"multiplier", mult.to_string(names)}, {"compatible", ok}});
      }
    }
    emit({{"ideal", ideal.to_string(names)}, {"compatible", all}, {"checks", checks}}, g, out);
    return kExitOk;
  }
  if (action == "linearity") {
    if (a.trials == 0) throw UsageError("--trials must be positive");
    const CartierMap phi(g.e, poly(single_multiplier(a)));
    emit({{"level", g.e},
          {"multiplier", phi.multiplier().to_string(names)},
          {"trials", a.trials},
          {"holds", check_linearity(phi, a.trials, g.seed)}},
         g, out);
    return kExitOk;
  }
  throw UsageError("unknown cartier action '" + action + "'");
}

int cmd_val(const Globals& g, const std::vector<std::string>& stream_specs,
            const std::string& input, std::istream& in, std::ostream& out) {
  if (input.empty()) throw UsageError("val needs a polynomial or fraction (positional or --poly)");
  const FieldContext& ctx = field(g);
  const EmbeddingValuation v = make_valuation(ctx, g, stream_specs);
  const auto names = default_var_names(g.vars);
  const RationalFn r = parse_rational(read_input(input, in), ctx, names);
  const CertifiedValue cv = v.valuate(r);
  emit({{"value", value_json(cv.value)}, {"precision_certified", cv.precision}}, g, out);
  return kExitOk;
}

int cmd_dvr_distinguish(const Globals& g, const std::string& spec_a, const std::string& spec_b,
                        std::ostream& out) {
  Globals two = g;
  two.vars = 2;
  const FieldContext& ctx = field(g);
  const EmbeddingValuation va = make_valuation(ctx, two, {spec_a});
  const EmbeddingValuation vb = make_valuation(ctx, two, {spec_b});
  const DistinguishingFraction df =
      distinguishing_fraction(va.stream(1), vb.stream(1), g.precision_cap);
  emit({{"i", df.index},
        {"fraction", df.display()},
        {"in_ring_a", va.in_ring(df.fraction)},
        {"in_ring_b", vb.in_ring(df.fraction)}},
       g, out);
  return kExitOk;
}

int cmd_dvr_residue(const Globals& g, const std::vector<std::string>& stream_specs,
                    const std::string& input, std::istream& in, std::ostream& out) {
  if (input.empty()) throw UsageError("dvr residue needs a fraction");
  const FieldContext& ctx = field(g);
  const EmbeddingValuation v = make_valuation(ctx, g, stream_specs);
  const auto names = default_var_names(g.vars);
  const RationalFn r = parse_rational(read_input(input, in), ctx, names);
  const CertifiedValue cv = v.valuate(r);
  const bool in_ring = cv.value >= ValuationValue::finite(0);
  emit({{"value", value_json(cv.value)},
        {"precision_certified", cv.precision},
        {"in_ring", in_ring},
        {"residue", in_ring ? Json(v.residue(r).to_string()) : Json(nullptr)}},
       g, out);
  return kExitOk;
}

void emit_report(const ExcellenceReport& report, const Globals& g, std::ostream& out) {
  if (g.pretty) {
    out << report.to_text();
  } else {
    out << report.to_json().dump() << "\n";
  }
}

int cmd_report(const std::string& kind, const Globals& g,
               const std::vector<std::string>& stream_specs, const std::string& compare,
               std::size_t samples, std::ostream& out) {
  if (kind == "poly-ring") {
    require_vars(g);
    require_level(g.e, "--e");
    field(g);
    emit_report(f_finite_report(g.p, g.m, g.vars, g.e), g, out);
    return kExitOk;
  }
  const FieldContext& ctx = field(g);
  const EmbeddingValuation v = make_valuation(ctx, g, stream_specs);
  DvrReportOptions options;
  options.samples = samples;
  options.seed = g.seed;
  if (compare.empty()) {
    emit_report(dvr_report(v, options), g, out);
    return kExitOk;
  }
  if (g.vars != 2) throw UsageError("--compare needs --vars 2");
  const EmbeddingValuation w = make_valuation(ctx, g, {compare});
  const auto [ra, rb] = dvr_pair_reports(v, w, options);
  if (g.pretty) {
    out << ra.to_text() << "\n" << rb.to_text();
  } else {
    out << Json{{"a", ra.to_json()}, {"b", rb.to_json()}}.dump() << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// selftest: randomized property checks fanned out over worker threads.

struct CheckResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
};

CheckResult check_round_trip(std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CheckResult r{"decompose-round-trip", trials, 0};
  const std::uint32_t primes[] = {2, 3, 5};
  for (std::size_t k = 0; k < trials; ++k) {
    const FieldContext& ctx = make_context(primes[k % 3], 1 + (k / 3) % 2);
    const std::size_t n = 1 + k % 3;
    const std::uint64_t e = 1 + k % 2;
    const MultiPoly f = random_poly(ctx, n, 20, 30, rng);
    if (recompose(decompose(f, e)) != f) ++r.failures;
  }
  return r;
}

CheckResult check_linearity_law(std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CheckResult r{"p^-e-linearity", trials, 0};
  const std::uint32_t primes[] = {2, 3, 5};
  for (std::size_t k = 0; k < trials; ++k) {
    const FieldContext& ctx = make_context(primes[k % 3]);
    const std::size_t n = 1 + k % 2;
    const CartierMap phi(1, random_poly(ctx, n, 6, 8, rng));
    const MultiPoly rr = random_poly(ctx, n, 4, 3, rng);
    const MultiPoly s = random_poly(ctx, n, 6, 10, rng);
    if (apply(phi, frobenius_image(rr, 1) * s) != rr * apply(phi, s)) ++r.failures;
  }
  return r;
}

CheckResult check_composition(std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CheckResult r{"composition", trials, 0};
  const std::uint32_t primes[] = {2, 3};
  for (std::size_t k = 0; k < trials; ++k) {
    const FieldContext& ctx = make_context(primes[k % 2]);
    const std::size_t n = 1 + k % 2;
    const CartierMap outer(1, random_poly(ctx, n, 4, 6, rng));
    const CartierMap inner(1, random_poly(ctx, n, 4, 6, rng));
    const MultiPoly f = random_poly(ctx, n, 6, 12, rng);
    if (apply(compose(outer, inner), f) != apply(outer, apply(inner, f))) ++r.failures;
  }
  return r;
}

CheckResult check_valuation(std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CheckResult r{"valuation-multiplicative", trials, 0};
  const FieldContext& ctx = make_context(2);
  const EmbeddingValuation v(ctx, {streams::lacunary(ctx)});
  for (std::size_t k = 0; k < trials; ++k) {
    const MultiPoly f = random_nonzero_poly(ctx, 2, 5, 6, rng);
    const MultiPoly h = random_nonzero_poly(ctx, 2, 5, 6, rng);
    const auto vf = v.valuate(f).value.value();
    const auto vh = v.valuate(h).value.value();
    if (v.valuate(f * h).value.value() != vf + vh) ++r.failures;
  }
  return r;
}

int cmd_selftest(const Globals& g, std::size_t trials, std::size_t threads, std::ostream& out) {
  if (trials == 0) throw UsageError("--trials must be positive");
  using Check = CheckResult (*)(std::size_t, std::uint64_t);
  const Check checks[] = {check_round_trip, check_linearity_law, check_composition,
                          check_valuation};
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<CheckResult> results(std::size(checks));
  for (std::size_t start = 0; start < std::size(checks); start += threads) {
    std::vector<std::future<CheckResult>> batch;
    for (std::size_t i = start; i < std::min(start + threads, std::size(checks)); ++i) {
      batch.push_back(std::async(std::launch::async, checks[i], trials, g.seed + i));
    }
    for (std::size_t i = 0; i < batch.size(); ++i) results[start + i] = batch[i].get();
  }
  Json list = Json::array();
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.failures == 0;
    list.push_back({{"name", r.name}, {"trials", r.trials}, {"failures", r.failures}});
  }
  emit({{"ok", ok}, {"checks", list}}, g, out);
  return ok ? kExitOk : kExitMath;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError:
    case ErrorKind::NotPrime:
    case ErrorKind::DegreeTooLarge:
    case ErrorKind::InvalidArgument:
    case ErrorKind::ContextMismatch:
      return kExitUsage;
    default:
      return kExitMath;
  }
}

void report_error(std::ostream& err, std::string_view kind, const std::string& message) {
  err << Json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in) {
  CLI::App app{"Exact Frobenius, Cartier-map and embedding-valuation computations in "
               "characteristic p",
               "charp"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--p", g.p, "Characteristic (prime, at most 2^20)");
  app.add_option("--m", g.m, "Extension degree of the coefficient field F_{p^m}");
  app.add_option("--vars", g.vars, "Number of variables");
  app.add_option("--e", g.e, "Frobenius level");
  app.add_option("--precision-cap", g.precision_cap, "Largest truncation tried by valuations");
  app.add_option("--seed", g.seed, "Seed for sampled checks");
  app.add_flag("--pretty", g.pretty, "Human-readable output instead of JSON");

  std::string input;

  auto* decompose_cmd = app.add_subcommand("decompose", "Frobenius pushforward decomposition");
  decompose_cmd->fallthrough();
  decompose_cmd->add_option("poly", input, "Polynomial, or - for stdin")->required();

  CartierArgs cart;
  auto* cartier_cmd = app.add_subcommand("cartier", "p^-e-linear maps given by multipliers");
  cartier_cmd->fallthrough();
  cartier_cmd->require_subcommand(1);
  cartier_cmd->add_option("-g,--multiplier", cart.multipliers, "Multiplier polynomial")->allow_extra_args(false);
  auto* c_apply = cartier_cmd->add_subcommand("apply", "Apply the map to a polynomial");
  c_apply->add_option("poly", cart.input, "Input polynomial, or - for stdin");
  auto* c_compose = cartier_cmd->add_subcommand("compose", "Compose with an inner map");
  c_compose->add_option("--inner-g", cart.inner_multiplier, "Inner multiplier (default: -g)");
  c_compose->add_option("--inner-e", cart.inner_level, "Inner level (default: --e)");
  auto* c_split = cartier_cmd->add_subcommand("split-check", "Does the map send 1 to 1");
  auto* c_compat = cartier_cmd->add_subcommand("compat", "Compatibility with a monomial ideal");
  c_compat->add_option("-J,--ideal", cart.ideal, "Monomial generators, e.g. 'x^2,y'");
  c_compat->add_option("--e-max", cart.max_level, "Sweep levels 1..e-max");
  auto* c_linear = cartier_cmd->add_subcommand("linearity", "Randomized p^-e-linearity check");
  c_linear->add_option("--trials", cart.trials, "Number of samples");
  for (auto* sub : {c_apply, c_compose, c_split, c_compat, c_linear}) sub->fallthrough();

  std::vector<std::string> stream_specs;
  std::string poly_flag;
  auto* val_cmd = app.add_subcommand("val", "Valuation of a polynomial or fraction");
  val_cmd->fallthrough();
  val_cmd->add_option("--stream", stream_specs, "Series for each variable after the first")->allow_extra_args(false);
  val_cmd->add_option("--poly", poly_flag, "Polynomial or fraction");
  val_cmd->add_option("input", input, "Polynomial or fraction, or - for stdin");

  std::string stream_a, stream_b;
  auto* dvr_cmd = app.add_subcommand("dvr", "Embedding discrete valuation rings");
  dvr_cmd->fallthrough();
  dvr_cmd->require_subcommand(1);
  auto* d_dist = dvr_cmd->add_subcommand("distinguish", "Fraction separating two valuation rings");
  d_dist->add_option("--stream-a", stream_a)->required();
  d_dist->add_option("--stream-b", stream_b)->required();
  auto* d_res = dvr_cmd->add_subcommand("residue", "Membership and residue of a fraction");
  d_res->add_option("--stream", stream_specs, "Series for each variable after the first")->allow_extra_args(false);
  d_res->add_option("fraction", input, "Fraction, or - for stdin");
  for (auto* sub : {d_dist, d_res}) sub->fallthrough();

  std::string compare;
  std::size_t samples = 50;
  auto* report_cmd = app.add_subcommand("report", "Excellence reports");
  report_cmd->fallthrough();
  report_cmd->require_subcommand(1);
  auto* r_poly = report_cmd->add_subcommand("poly-ring", "Polynomial ring over F_{p^m}");
  auto* r_dvr = report_cmd->add_subcommand("dvr", "Embedding DVR");
  r_dvr->add_option("--stream", stream_specs, "Series for each variable after the first")->allow_extra_args(false);
  r_dvr->add_option("--compare", compare, "Second stream to separate from");
  r_dvr->add_option("--samples", samples, "Number of value-0 residue samples");
  for (auto* sub : {r_poly, r_dvr}) sub->fallthrough();

  std::size_t trials = 200;
  std::size_t threads = 0;
  auto* selftest_cmd = app.add_subcommand("selftest", "Randomized property checks");
  selftest_cmd->fallthrough();
  selftest_cmd->add_option("--trials", trials, "Samples per property");
  selftest_cmd->add_option("--threads", threads, "Worker threads (0: hardware)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "UsageError", e.what());
    return kExitUsage;
  }

  try {
    if (*decompose_cmd) return cmd_decompose(g, input, in, out);
    if (*cartier_cmd) {
      for (auto* sub : cartier_cmd->get_subcommands()) {
        return cmd_cartier(sub->get_name(), g, cart, in, out);
      }
    }
    if (*val_cmd) {
      if (!poly_flag.empty() && !input.empty()) throw UsageError("give the input once");
      if (stream_specs.empty()) stream_specs.assign(g.vars >= 2 ? g.vars - 1 : 1, "lacunary");
      return cmd_val(g, stream_specs, poly_flag.empty() ? input : poly_flag, in, out);
    }
    if (*dvr_cmd) {
      if (*d_dist) return cmd_dvr_distinguish(g, stream_a, stream_b, out);
      if (stream_specs.empty()) stream_specs.assign(g.vars >= 2 ? g.vars - 1 : 1, "lacunary");
      return cmd_dvr_residue(g, stream_specs, input, in, out);
    }
    if (*report_cmd) {
      if (stream_specs.empty()) stream_specs.assign(g.vars >= 2 ? g.vars - 1 : 1, "lacunary");
      return cmd_report(*r_poly ? "poly-ring" : "dvr", g, stream_specs, compare, samples, out);
    }
    if (*selftest_cmd) return cmd_selftest(g, trials, threads, out);
  } catch (const UsageError& e) {
    report_error(err, "UsageError", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    report_error(err, to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  }
  report_error(err, "UsageError", "no command given");
  return kExitUsage;
}

}  // namespace charp::cli
