#include "rgs/experiment.hpp"

#include "rgs/probsg.hpp"
#include "rgs/randgen.hpp"
#include "rgs/rng.hpp"
#include "rgs/serialization.hpp"
#include "rgs/tomographic.hpp"
#include "rgs/twirling.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <set>

namespace rgs {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

double to_double(const std::string& raw) {
  const std::string s = trimmed(raw);
  double x = 0.0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, x);
  if (ec != std::errc{} || ptr != end || !std::isfinite(x)) throw ConfigError("not a number: '" + s + "'");
  return x;
}

int to_int(const std::string& raw) {
  const std::string s = trimmed(raw);
  int x = 0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, x);
  if (ec != std::errc{} || ptr != end) throw ConfigError("not an integer: '" + s + "'");
  return x;
}

std::vector<double> doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& p : split(s, ',')) out.push_back(to_double(p));
  return out;
}

std::vector<int> ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& p : split(s, ',')) out.push_back(to_int(p));
  return out;
}

/// "name(args)" → {name, args}.
std::optional<std::pair<std::string, std::string>> call(const std::string& text) {
  const auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')') return std::nullopt;
  return std::make_pair(text.substr(0, open), text.substr(open + 1, text.size() - open - 2));
}

Group resolve_group(const ExperimentConfig& c) {
  if (!c.group.empty()) {
    try {
      return group_from_name(c.group);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (c.dim >= 2) return Group::cyclic_product({c.dim, c.dim});
  throw ConfigError("--group (or --dim for the Weyl group Z_d x Z_d) is required");
}

const std::string& require(const std::string& value, const char* name) {
  if (value.empty()) throw ConfigError(std::string("--") + name + " is required");
  return value;
}

std::vector<TimePair> upper_pairs(const std::vector<double>& times) {
  std::vector<TimePair> pairs;
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (std::size_t j = i; j < times.size(); ++j) pairs.emplace_back(times[i], times[j]);
  }
  return pairs;
}

const std::vector<double>& require_times(const ExperimentConfig& c) {
  if (c.times.empty()) throw ConfigError("--times is required");
  return c.times;
}

DiscreteMeasure parse_jump(const Group& group, const std::string& text) {
  if (text == "identity") return make_dirac(group, group.identity());
  if (text == "uniform") return make_uniform(group);
  if (text == "delta_a") {
    if (!group.is_finite() || group.order() < 2) throw ConfigError("delta_a needs a finite group");
    return make_dirac(group, group.element_at(1));
  }
  if (const auto c = call(text)) {
    const auto& [name, args] = *c;
    if (name == "exp") return make_dirac(group, group.exp_map(doubles(args)));
    if (name == "delta" || name == "weyl") {
      switch (group.kind()) {
        case GroupKind::finite_product:
          return make_dirac(group, group.element(ints(args)));
        case GroupKind::circle:
          return make_dirac(group, GroupElement::angle(to_double(args)));
        case GroupKind::euclidean:
          return make_dirac(group, GroupElement::point(doubles(args)));
        case GroupKind::special_unitary:
          break;
      }
    }
  }
  throw ConfigError("unknown jump law '" + text + "' on " + group.name());
}

nlohmann::json matrix_json(const Matrix& m) { return matrix_to_json(m); }

Report threshold(std::string check, std::string identity, double residual, double bound) {
  Report r;
  r.check = std::move(check);
  r.identity = std::move(identity);
  r.residual = residual;
  r.bound = bound;
  r.pass = residual <= bound;
  return r;
}

struct Context {
  const ExperimentConfig& config;
  std::uint64_t seed = 0;
  SampleOptions sampling;
};

double tol_or(const ExperimentConfig& c, double fallback) { return c.tol.value_or(fallback); }
int samples_or(const ExperimentConfig& c, int fallback) { return c.samples > 0 ? c.samples : fallback; }

void require_sampling(const ConvolutionSemigroupSpec& spec, const ExperimentConfig& c) {
  if (!spec.is_empirical()) return;
  if (!c.seed) throw ConfigError("--seed (or RGS_SEED) is required for " + spec.kind_name() + " semigroups");
  if (c.budget == 0) throw ConfigError("--budget is required for " + spec.kind_name() + " semigroups");
}

ConvolutionSemigroupSpec semigroup_of(const Group& group, const ExperimentConfig& c) {
  auto spec = parse_semigroup(group, require(c.semigroup, "semigroup"), c.budget ? c.budget : 10000);
  require_sampling(spec, c);
  return spec;
}

ExperimentResult run_semigroup_check(const Context& ctx) {
  const auto& c = ctx.config;
  const Group group = resolve_group(c);
  const Representation u = parse_representation(group, require(c.representation, "rep"));
  const auto spec = semigroup_of(group, c);
  const auto pairs = upper_pairs(require_times(c));
  return {check_semigroup_property(u, spec, pairs, ctx.sampling, tol_or(c, 1e-10)), {}, {}};
}

ExperimentResult run_continuity(const Context& ctx) {
  const auto& c = ctx.config;
  const Group group = resolve_group(c);
  const Representation u = parse_representation(group, require(c.representation, "rep"));
  const auto spec = semigroup_of(group, c);
  const std::vector<double> times = c.times.empty() ? std::vector<double>{0.1, 0.01, 0.001} : c.times;
  return {check_continuity_at_zero(u, spec, times, ctx.sampling, tol_or(c, 0.05)), {}, {}};
}

ExperimentResult run_generator(const Context& ctx) {
  const auto& c = ctx.config;
  const Group group = resolve_group(c);
  const Representation u = parse_representation(group, require(c.representation, "rep"));
  const auto spec = semigroup_of(group, c);
  const BoundedOperator est = estimate_generator(u, spec, c.t0, ctx.sampling, c.richardson);
  Report report;
  report.check = "generator";
  report.identity = "A = lim_{t->0} (S_t - I)/t";
  report.inputs["representation"] = u.id();
  report.inputs["semigroup"] = spec.describe();
  report.inputs["t0"] = c.t0;
  report.inputs["richardson"] = c.richardson;
  report.details["estimate"] = matrix_json(est.matrix);
  report.details["truncation_error"] = est.truncation_error;
  if (const auto* cp = std::get_if<CompoundPoisson>(&spec.kind())) {
    const Matrix ref = compound_poisson_generator(u, *cp);
    report.identity = "A = rate (sum_j nu_j U(h_j) - I)";
    report.residual = spectral_norm(est.matrix - ref);
    report.bound = tol_or(c, 1e-3) + est.truncation_error;
    report.pass = report.residual <= report.bound;
    report.details["reference"] = matrix_json(ref);
  } else {
    report.bound = tol_or(c, 1e-3);
    report.pass = est.matrix.allFinite();
    report.notes.push_back("no closed-form generator for " + spec.kind_name() + "; estimate reported only");
  }
  return {report, {}, {}};
}

ExperimentResult run_caratheodory(const Context& ctx) {
  const auto& c = ctx.config;
  const Group group = resolve_group(c);
  const Representation u = parse_representation(group, require(c.representation, "rep"));
  const int n = samples_or(c, 10);
  RngStream rng(ctx.seed, 0);
  std::vector<Atom> atoms;
  for (int i = 0; i < n; ++i) atoms.push_back({group.haar_sample(rng), 1.0 / n});
  const DiscreteMeasure mu(group, atoms, Exactness::empirical);
  const Matrix before = randomly_generated_operator(u, mu).matrix;
  const UnitaryMixture mix = random_unitary_decomposition(u, mu);
  Matrix after = Matrix::Zero(u.dim(), u.dim());
  for (std::size_t k = 0; k < mix.unitaries.size(); ++k) after += mix.probabilities[k] * mix.unitaries[k];
  const auto limit = static_cast<std::size_t>(2 * u.dim() * u.dim() + 1);
  const double weight_error = std::abs(compensated_sum(mix.probabilities) - 1.0);
  const double min_weight = *std::min_element(mix.probabilities.begin(), mix.probabilities.end());

  Report drift = threshold("barycenter", "sum_k p_k U_k = sum_i w_i U(g_i)", frobenius_norm(after - before),
                           tol_or(c, 1e-10));
  Report weights = threshold("probability_vector", "sum_k p_k = 1, p_k >= 0", weight_error, kMassTolerance);
  weights.pass = weights.pass && min_weight >= 0.0;
  Report count = threshold("atom_count", "at most 2d^2 + 1 atoms", static_cast<double>(mix.unitaries.size()),
                           static_cast<double>(limit));
  Report report = combine_reports("caratheodory", command_identity("caratheodory"), {drift, weights, count});
  report.inputs["representation"] = u.id();
  report.inputs["samples"] = n;
  report.inputs["seed"] = ctx.seed;
  report.details["atoms_in"] = mu.size();
  report.details["atoms_out"] = mix.unitaries.size();
  report.details["probabilities"] = mix.probabilities;
  return {report, {}, {}};
}

Representation twirl_representation(const Group& group, const ExperimentConfig& c) {
  if (!c.representation.empty()) return parse_representation(group, c.representation);
  if (c.group.empty()) return weyl_system(c.dim);
  throw ConfigError("--rep is required when --group is given");
}

ExperimentResult run_twirl(const Context& ctx) {
  const auto& c = ctx.config;
  const Group group = resolve_group(c);
  const Representation u = twirl_representation(group, c);
  const auto spec = semigroup_of(group, c);
  const std::string check = c.check.empty() ? "cptp" : c.check;
  nlohmann::json channels = nlohmann::json::array();
  ExperimentResult out;

  if (check == "cptp") {
    const auto& times = require_times(c);
    QdsOptions opts;
    opts.sampling = ctx.sampling;
    if (c.tol) opts.tp_tol = opts.unital_tol = opts.semigroup_tol = *c.tol;
    out.report = verify_qds(u, spec, times, opts);
  } else if (check == "dual") {
    const auto& times = require_times(c);
    RngStream rng(ctx.seed, 0xd1a1);
    std::vector<Report> parts;
    for (std::size_t i = 0; i < times.size(); ++i) {
      SampleOptions so = ctx.sampling;
      so.stream += i;
      const DiscreteMeasure mu = semigroup_measure_at(spec, times[i], so);
      const Superoperator phi = twirl_superoperator(u, mu);
      const Superoperator dual = dual_twirl_superoperator(u, mu);
      double pairing = 0.0;
      for (int k = 0; k < samples_or(c, 100); ++k) {
        const Matrix a = random_ginibre(u.dim(), u.dim(), rng);
        const Matrix b = random_ginibre(u.dim(), u.dim(), rng);
        pairing = std::max(pairing, std::abs((b * phi.apply(a)).trace() - (dual.apply(b) * a).trace()));
      }
      const double choice = spectral_norm(bilinear_dual(phi).matrix - hs_dual(phi).matrix);
      const double direct = spectral_norm(bilinear_dual(phi).matrix - dual.matrix);
      const double tol = tol_or(c, 1e-12);
      parts.push_back(threshold("duality", "tr(B T(A)) = tr(T*(B) A)", pairing, tol));
      parts.push_back(threshold("pairing_independence", "T Phi^T T = Phi^dagger", choice, tol));
      parts.push_back(threshold("dual_assembly", "T Phi^T T = sum_i w_i U_i^T (x) U_i^*", direct, tol));
      parts.push_back(threshold("dual_unitality", "T*(I) = I", unitality_residual(dual), std::max(tol, 1e-12)));
    }
    out.report = combine_reports("twirl_duality", "T_t* is the dual of T_t under tr(BA)", parts);
  } else if (check == "generator") {
    const Representation theta = adjoint_rep(u);
    const BoundedOperator est = estimate_generator(theta, spec, c.t0, ctx.sampling, c.richardson);
    LindbladOptions lo;
    lo.allowance = est.truncation_error;
    lo.expected_tol = tol_or(c, 1e-3);
    lo.seed = ctx.seed;
    if (const auto* cp = std::get_if<CompoundPoisson>(&spec.kind())) lo.expected = compound_poisson_generator(theta, *cp);
    out.report = lindblad_residual({est.matrix, Picture::schrodinger, u.dim()}, lo);
    out.report.inputs["t0"] = c.t0;
    out.report.inputs["richardson"] = c.richardson;
    channels.push_back({{"generator", matrix_json(est.matrix)}});
  } else {
    throw ConfigError("unknown twirl check '" + check + "' (cptp, dual, generator)");
  }

  if (check != "generator") {
    for (std::size_t i = 0; i < c.times.size(); ++i) {
      SampleOptions so = ctx.sampling;
      so.stream += 1000 + i;
      nlohmann::json ch = channel_to_json(twirl_superoperator(u, semigroup_measure_at(spec, c.times[i], so)));
      ch["t"] = c.times[i];
      channels.push_back(ch);
    }
  }
  out.report.inputs["representation"] = u.id();
  out.report.inputs["semigroup"] = spec.describe();
  out.document["channels"] = channels;
  return out;
}

DiscreteMeasure tomographic_measure(const Group& group, const ExperimentConfig& c, const SampleOptions& so) {
  const std::string m = c.measure.empty() ? "uniform" : c.measure;
  if (m == "semigroup") {
    const auto spec = semigroup_of(group, c);
    return semigroup_measure_at(spec, require_times(c).front(), so);
  }
  return parse_jump(group, m);
}

std::vector<Matrix> random_matrices(int d, int n, std::uint64_t seed) {
  RngStream rng(seed, 0x70e0);
  std::vector<Matrix> out;
  for (int i = 0; i < n; ++i) out.push_back(random_ginibre(d, d, rng));
  return out;
}

ExperimentResult run_tomographic(const Context& ctx) {
  const auto& c = ctx.config;
  if (c.dim < 2) throw ConfigError("--dim (at least 2) is required");
  const int d = c.dim;
  const Group group = Group::cyclic_product({d, d});
  const std::string check = c.check.empty() ? "intertwining" : c.check;
  const auto samples = random_matrices(d, samples_or(c, 50), ctx.seed);
  ExperimentResult out;
  if (check == "intertwining") {
    const DiscreteMeasure mu = tomographic_measure(group, c, ctx.sampling);
    out.report = check_intertwining(d, mu, samples, tol_or(c, 1e-10));
    out.report.inputs["measure"] = c.measure.empty() ? "uniform" : c.measure;
  } else if (check == "exhaustive") {
    out.report = check_intertwining_exhaustive(d, tol_or(c, 1e-10));
  } else if (check == "isometry") {
    const TomographicMap w(d);
    double iso = 0.0;
    double round = 0.0;
    for (const auto& s : samples) {
      const Tomogram f = w.apply(s);
      iso = std::max(iso, std::abs(f.norm() - frobenius_norm(s)));
      round = std::max(round, frobenius_norm(w.inverse(f) - s));
    }
    const double tol = tol_or(c, 1e-12);
    out.report = combine_reports("tomographic_isometry", "||W S|| = ||S||_HS and W^{-1} W S = S",
                                 {threshold("isometry", "||W S|| = ||S||_HS", iso, tol),
                                  threshold("round_trip", "W^{-1} W S = S", round, tol)});
  } else if (check == "idempotence") {
    const DiscreteMeasure mu = tomographic_measure(group, c, ctx.sampling);
    const Matrix sigma = tomographic_operator(d, mu);
    out.report = threshold("tomographic_idempotence", "Sigma^2 = Sigma for the uniform average",
                           spectral_norm(sigma * sigma - sigma), tol_or(c, 1e-12));
  } else {
    throw ConfigError("unknown tomographic check '" + check + "' (intertwining, exhaustive, isometry, idempotence)");
  }
  out.report.inputs["dim"] = d;
  if (!samples.empty()) out.document["example_tomogram"] = tomogram_to_json(wigner_map(d, samples.front()));
  return out;
}

ExperimentResult run_probability(const Context& ctx) {
  const auto& c = ctx.config;
  const Group group = resolve_group(c);
  if (!group.is_finite()) throw ConfigError("probability semigroups are implemented on finite groups only");
  const auto spec = semigroup_of(group, c);
  const auto& times = require_times(c);
  const double tol = tol_or(c, 1e-10);
  std::vector<Report> parts;
  parts.push_back(prob_semigroup_check(spec, upper_pairs(times), tol, ctx.seed));
  for (double t : times) parts.push_back(identify_as_randomly_generated(spec, t, samples_or(c, 100), ctx.seed));
  ExperimentResult out;
  out.report = combine_reports("probability", command_identity("probability"), parts);
  out.report.inputs["semigroup"] = spec.describe();
  const RealMatrix m = transition_matrix(semigroup_measure_at(spec, times.front()));
  out.csv = transition_matrix_csv(group, m);
  out.document["transition_matrix_t"] = times.front();
  return out;
}

ExperimentResult run_measure_check(const Context& ctx) {
  const auto& c = ctx.config;
  const Group group = resolve_group(c);
  const auto spec = semigroup_of(group, c);
  return {check_convolution_semigroup(spec, upper_pairs(require_times(c)), ctx.sampling, tol_or(c, 1e-10)), {}, {}};
}

using Runner = ExperimentResult (*)(const Context&);

const std::map<std::string, std::pair<Runner, std::string>>& registry() {
  static const std::map<std::string, std::pair<Runner, std::string>> r = {
      {"semigroup-check", {run_semigroup_check, "S_t S_s = S_{t+s} for S_t = sum_i w_i U(g_i), (g_i, w_i) ~ mu_t"}},
      {"continuity", {run_continuity, "||S_t - I|| -> 0 as t -> 0; compound Poisson: <= (1 + B)(1 - exp(-rate t))"}},
      {"generator", {run_generator, "A = lim (S_t - I)/t; compound Poisson: A = rate (sum_j nu_j U(h_j) - I)"}},
      {"caratheodory", {run_caratheodory, "sum_i w_i U(g_i) = sum_k p_k U_k with at most 2d^2 + 1 terms"}},
      {"twirl", {run_twirl, "T_t rho = sum_i w_i U(g_i) rho U(g_i)* is a quantum dynamical semigroup"}},
      {"tomographic", {run_tomographic, "W T^HS = Sigma W, W S = (tr(W(p,q)* S)/sqrt(d))_{p,q}"}},
      {"probability", {run_probability, "(P_t f)(g) = sum_h mu_t(h) f(gh) = (sum_h mu_t(h) R(h) f)(g)"}},
      {"measure-check", {run_measure_check, "mu_t * mu_s = mu_{t+s} in total variation"}},
  };
  return r;
}

}  // namespace

std::vector<double> parse_times(const std::string& text) {
  if (text.empty()) return {};
  std::vector<double> out = doubles(text);
  for (double t : out) {
    if (t < 0.0) throw ConfigError("times must be >= 0");
  }
  return out;
}

Representation parse_representation(const Group& group, const std::string& text) {
  try {
    if (const auto c = call(text)) {
      const auto& [name, inner] = *c;
      if (name == "adjoint") return adjoint_rep(parse_representation(group, inner));
      if (name == "inverse") return antirep_from_inverse(parse_representation(group, inner));
      if (name == "dagger") return antirep_from_adjoint(parse_representation(group, inner));
    }
    const auto parts = split(text, ':');
    if (parts[0] == "character" && parts.size() == 2) return character_rep(group, ints(parts[1]));
    if (text == "defining") {
      if (group.kind() != GroupKind::special_unitary) throw ConfigError("defining needs SU(n)");
      return defining_su(group.dimension());
    }
    if (text == "weyl" || text == "two_sided") {
      const auto& o = group.orders();
      if (!group.is_finite() || o.size() != 2 || o[0] != o[1]) throw ConfigError(text + " needs Z_d x Z_d");
      return text == "weyl" ? weyl_system(o[0]) : two_sided_rep(group, Multiplier::finite_weyl(o[0]));
    }
    if (text == "regular") return right_regular_rep(group);
  } catch (const std::logic_error& e) {
    throw ConfigError(std::string("representation '") + text + "': " + e.what());
  }
  throw ConfigError("unknown representation '" + text + "'");
}

ConvolutionSemigroupSpec parse_semigroup(const Group& group, const std::string& text, std::size_t budget) {
  const auto parts = split(text, ':');
  try {
    if (parts[0] == "dirac_flow" && parts.size() == 2) {
      return ConvolutionSemigroupSpec(group, DiracFlow{doubles(parts[1])}, budget);
    }
    if (parts[0] == "compound_poisson" && parts.size() == 3) {
      return ConvolutionSemigroupSpec(group, CompoundPoisson{to_double(parts[1]), parse_jump(group, parts[2])}, budget);
    }
    if (parts[0] == "gaussian" && parts.size() == 2) {
      return ConvolutionSemigroupSpec(group, GaussianDiffusion{to_double(parts[1])}, budget);
    }
    if (parts[0] == "brownian" && (parts.size() == 2 || parts.size() == 3)) {
      const int steps = parts.size() == 3 ? to_int(parts[2]) : 32;
      return ConvolutionSemigroupSpec(group, BrownianMotion{to_double(parts[1]), steps}, budget);
    }
  } catch (const std::logic_error& e) {
    throw ConfigError(std::string("semigroup '") + text + "': " + e.what());
  }
  throw ConfigError("unknown semigroup '" + text + "'");
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j = {{"command", c.command},
                      {"group", c.group},
                      {"representation", c.representation},
                      {"semigroup", c.semigroup},
                      {"measure", c.measure},
                      {"check", c.check},
                      {"dim", c.dim},
                      {"times", c.times},
                      {"budget", c.budget},
                      {"t0", c.t0},
                      {"richardson", c.richardson},
                      {"samples", c.samples},
                      {"threads", c.threads},
                      {"output", c.output},
                      {"csv", c.csv}};
  if (c.seed) j["seed"] = *c.seed;
  if (c.tol) j["tol"] = *c.tol;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {"command", "group", "representation", "semigroup", "measure",
                                              "check", "dim", "times", "budget", "seed", "tol", "t0",
                                              "richardson", "samples", "threads", "output", "csv"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  ExperimentConfig c;
  try {
    auto get = [&j](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    get("command", c.command);
    get("group", c.group);
    get("representation", c.representation);
    get("semigroup", c.semigroup);
    get("measure", c.measure);
    get("check", c.check);
    get("dim", c.dim);
    get("times", c.times);
    get("budget", c.budget);
    get("t0", c.t0);
    get("richardson", c.richardson);
    get("samples", c.samples);
    get("threads", c.threads);
    get("output", c.output);
    get("csv", c.csv);
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tol")) c.tol = j.at("tol").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

const std::vector<std::string>& experiment_commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, entry] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::string command_identity(const std::string& command) {
  const auto it = registry().find(command);
  if (it == registry().end()) throw ConfigError("unknown command '" + command + "'");
  return it->second.second;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const auto it = registry().find(config.command);
  if (it == registry().end()) throw ConfigError("unknown command '" + config.command + "'");
  if (config.tol && !(*config.tol > 0.0)) throw ConfigError("tolerances must be positive");
  if (!(config.t0 > 0.0)) throw ConfigError("t0 must be positive");
  for (double t : config.times) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("times must be finite and >= 0");
  }
  if (config.threads == 0) throw ConfigError("threads must be at least 1");

  Context ctx{config, config.seed.value_or(0), {}};
  ctx.sampling = {config.budget, ctx.seed, 0, config.threads};
  ExperimentResult result;
  try {
    result = it->second.first(ctx);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::logic_error& e) {
    throw ConfigError(e.what());
  }
  nlohmann::json doc = to_json(result.report);
  doc["command"] = config.command;
  doc["exercises"] = it->second.second;
  doc["seed"] = ctx.seed;
  nlohmann::json cfg = config_to_json(config);
  cfg.erase("output");
  cfg.erase("csv");
  doc["config"] = cfg;
  for (auto& [key, value] : result.document.items()) doc[key] = value;
  result.document = std::move(doc);
  return result;
}

}  // namespace rgs
