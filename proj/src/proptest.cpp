#include "purify/proptest.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>

#include "purify/channels.hpp"
#include "purify/metrics.hpp"
#include "purify/purification.hpp"

namespace purify {

namespace {

using Trial = std::function<std::optional<Json>(std::mt19937_64&)>;

constexpr std::size_t kMaxCounterexamples = 5;

Index uniform_index(std::mt19937_64& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

DensityMatrix any_state(std::mt19937_64& rng, Index dim) {
  return random_mixed(dim, uniform_index(rng, 1, dim), rng);
}

DensityMatrix midpoint(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(0.5 * (a.matrix() + b.matrix()));
}

std::optional<Json> data_processing(std::mt19937_64& rng) {
  const Index in = uniform_index(rng, 2, 4);
  const Index out = uniform_index(rng, 2, 4);
  const Index min_count = (in + out - 1) / out;
  const Index count = uniform_index(rng, min_count, min_count + 2);
  const KrausChannel channel = random_channel(in, out, count, rng());
  const DensityMatrix rho = any_state(rng, in);
  const DensityMatrix sigma = any_state(rng, in);
  const double before = trace_distance(rho, sigma);
  const double after = trace_distance(apply(channel, rho), apply(channel, sigma));
  if (after <= before + 1e-9) return std::nullopt;
  return Json{{"channel", to_json(channel)},
              {"rho", to_json(rho)},
              {"sigma", to_json(sigma)},
              {"before", before},
              {"after", after}};
}

std::optional<Json> dim_nogo(std::mt19937_64& rng) {
  const Index dim = uniform_index(rng, 2, 3);
  const auto [a, b] = random_nonorthogonal_mixed_pair(dim, rng);
  const PurifiabilityVerdict v = can_purify_perfectly(a, b);
  if (v.verdict != Verdict::Yes) return std::nullopt;
  return Json{{"rho", to_json(a)}, {"sigma", to_json(b)}, {"verdict", to_json(v)}};
}

std::optional<Json> purify_faithful(std::mt19937_64& rng) {
  const DensityMatrix rho = any_state(rng, uniform_index(rng, 2, 8));
  const Purification p = purify_state(rho);
  const Matrix marginal = partial_trace(p.state.projector(), p.system_dim,
                                        p.aux_dim, Keep::A);
  const double err = (marginal - rho.matrix()).cwiseAbs().maxCoeff();
  const double pur = purity(DensityMatrix::from_pure(p.state));
  if (err <= 1e-10 && pur >= 1.0 - 1e-10) return std::nullopt;
  return Json{{"rho", to_json(rho)}, {"marginal_error", err}, {"purity", pur}};
}

// A faithful universal purifier appends a state; it never raises purity.
std::optional<Json> nogo_purity(std::mt19937_64& rng) {
  const Index dim = uniform_index(rng, 2, 4);
  const DensityMatrix rho = any_state(rng, dim);
  const DensityMatrix sigma = any_state(rng, uniform_index(rng, 1, 3));
  const KrausChannel channel = tensor_with_state(dim, sigma);
  const DensityMatrix out = apply(channel, rho);
  const double faithful_err =
      (partial_trace(out.matrix(), dim, sigma.dim(), Keep::A) - rho.matrix())
          .cwiseAbs()
          .maxCoeff();
  if (purity(out) <= purity(rho) + 1e-12 && faithful_err <= 1e-12) {
    return std::nullopt;
  }
  return Json{{"rho", to_json(rho)},
              {"sigma", to_json(sigma)},
              {"purity_in", purity(rho)},
              {"purity_out", purity(out)},
              {"faithfulness_error", faithful_err}};
}

// Pure outputs on rho_1, rho_2 and on their midpoint force equal outputs.
std::optional<Json> nogo_constant(std::mt19937_64& rng) {
  const DensityMatrix a = random_mixed(4, uniform_index(rng, 1, 2), rng);
  const DensityMatrix b = random_mixed(4, uniform_index(rng, 1, 2), rng);
  const EqualDistanceResult built = equal_distance_pure_outputs(a, b);
  const double spread =
      trace_distance(apply(built.channel, a), apply(built.channel, b));
  const double mid_purity = purity(apply(built.channel, midpoint(a, b)));
  const bool contrapositive_ok = spread <= 1e-6 || mid_purity < 1.0 - 1e-8;

  const KrausChannel constant = constant_channel(4, built.phi);
  const bool constant_ok =
      purity(apply(constant, midpoint(a, b))) >= 1.0 - 1e-12;
  if (contrapositive_ok && constant_ok) return std::nullopt;
  return Json{{"rho_1", to_json(a)},
              {"rho_2", to_json(b)},
              {"output_distance", spread},
              {"midpoint_purity", mid_purity}};
}

std::optional<Json> equal_distance(std::mt19937_64& rng) {
  const DensityMatrix a = random_mixed(4, uniform_index(rng, 1, 2), rng);
  const DensityMatrix b = random_mixed(4, uniform_index(rng, 1, 2), rng);
  const EqualDistanceResult built = equal_distance_pure_outputs(a, b);
  const DensityMatrix out_a = apply(built.channel, a);
  const DensityMatrix out_b = apply(built.channel, b);
  const double gap = std::abs(trace_distance(out_a, out_b) - wcd(a, b));
  const double defect = is_cptp(built.channel.kraus()).defect;
  if (gap <= 1e-7 && purity(out_a) >= 1.0 - 1e-7 &&
      purity(out_b) >= 1.0 - 1e-7 && defect <= 1e-8) {
    return std::nullopt;
  }
  return Json{{"rho", to_json(a)},
              {"rho_prime", to_json(b)},
              {"distance_gap", gap},
              {"cptp_defect", defect}};
}

std::optional<Json> decision(std::mt19937_64& rng) {
  const auto family = random_essentially_pure_family(2, 2, 2, rng());
  const auto yes = can_purify_perfectly(family.states[0], family.states[1]);
  const auto [p, q] = random_commuting_pair(uniform_index(rng, 2, 4), rng());
  const auto no = can_purify_perfectly(p, q);
  if (yes.verdict == Verdict::Yes && no.verdict == Verdict::No) {
    return std::nullopt;
  }
  return Json{{"essentially_pure", to_json(yes)}, {"commuting", to_json(no)}};
}

std::optional<Json> uhlmann(std::mt19937_64& rng) {
  const Index dim = uniform_index(rng, 2, 4);
  const DensityMatrix a = any_state(rng, dim);
  const DensityMatrix b = any_state(rng, dim);
  const double gap =
      std::abs(max_purification_overlap(a, b) - fidelity(a, b));
  if (gap <= 1e-8) return std::nullopt;
  return Json{{"rho", to_json(a)}, {"sigma", to_json(b)}, {"gap", gap}};
}

std::optional<Json> composition(std::mt19937_64& rng) {
  const Index a = uniform_index(rng, 2, 4);
  const Index b = uniform_index(rng, 2, 4);
  const Index c = uniform_index(rng, 2, 4);
  const KrausChannel first = random_channel(a, b, (a + b - 1) / b + 1, rng());
  const KrausChannel second = random_channel(b, c, (b + c - 1) / c + 1, rng());
  const CptpCheck check = is_cptp(compose(first, second).kraus());
  if (check.ok) return std::nullopt;
  return Json{{"first", to_json(first)},
              {"second", to_json(second)},
              {"defect", check.defect}};
}

const std::map<std::string, Trial>& registry() {
  static const std::map<std::string, Trial> suites{
      {"data-processing", data_processing},
      {"dim-nogo", dim_nogo},
      {"purify-faithful", purify_faithful},
      {"nogo-purity", nogo_purity},
      {"nogo-constant", nogo_constant},
      {"equal-distance", equal_distance},
      {"decision", decision},
      {"uhlmann", uhlmann},
      {"composition", composition},
  };
  return suites;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, trial] : registry()) names.push_back(name);
  return names;
}

SuiteReport run_suite(const std::string& name, std::size_t trials,
                      std::uint64_t seed) {
  const auto it = registry().find(name);
  if (it == registry().end()) {
    throw std::invalid_argument("unknown suite: " + name);
  }
  SuiteReport report;
  report.suite = name;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(t),
                      static_cast<std::uint32_t>(t >> 32)};
    std::mt19937_64 rng(seq);
    std::optional<Json> failure;
    try {
      failure = it->second(rng);
    } catch (const std::exception& e) {
      failure = Json{{"exception", e.what()}};
    }
    if (failure) {
      ++report.failures;
      if (report.counterexamples.size() < kMaxCounterexamples) {
        (*failure)["trial"] = t;
        report.counterexamples.push_back(std::move(*failure));
      }
    }
  }
  return report;
}

}  // namespace purify
