// Copyright 2026 The capra-l0 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// capra: command-line front end. See README.md for the JSON layout of each subcommand.

#include <capra/capra.hpp>
#include <capra/factorization.hpp>
#include <capra/io.hpp>
#include <capra/knorms.hpp>
#include <capra/monotonicity.hpp>
#include <capra/sparseopt.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace {

using capra::Vector;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;

struct RunConfig {
  std::string source = "lp:2";
  std::string phi = "id";
  int dim = 0;
  std::uint64_t seed = 1;
  std::string x;
  std::string y;
  std::string output = "json";
  bool no_shortcut = false;
  double tol = 1e-8;
  int samples = 0;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CAPRA_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw capra::ArgumentError("CAPRA_SEED is not an unsigned integer");
    }
  }
  return 1;
}

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

Json decomposition_json(const capra::Decomposition& w) {
  Json parts = Json::array();
  for (std::size_t l = 0; l < w.parts.size(); ++l) {
    if (w.parts[l].cwiseAbs().maxCoeff() == 0.0 && w.part_bounds[l] == 0.0) continue;
    parts.push_back({{"level", static_cast<int>(l) + 1}, {"z", to_json(w.parts[l])}, {"bound", w.part_bounds[l]}});
  }
  return {{"parts", parts}, {"budget", w.budget()}};
}

Json bracket_json(const capra::BracketedValue& b) {
  Json j;
  j["value"] = number(b.value());
  j["lower"] = number(b.lower);
  j["upper"] = number(b.upper);
  j["infinite"] = b.infinite;
  j["method"] = b.method;
  if (!b.infinite) {
    j["gap"] = b.gap();
    j["witness"] = decomposition_json(b.witness);
    if (b.dual_witness.size() > 0) j["dual_witness"] = to_json(b.dual_witness);
  }
  return j;
}

Json membership_json(const capra::MembershipDiagnostics& m) {
  return {{"member", m.member},
          {"level", m.level},
          {"normal_cone_residual", m.normal_cone_residual},
          {"argmax_residual", m.argmax_residual},
          {"argmax", m.argmax},
          {"failed", m.failed}};
}

Json mono_json(const capra::MonotonicityReport& r) {
  Json j = {{"property", capra::to_string(r.property)},
            {"verdict", capra::to_string(r.verdict)},
            {"analytic", r.analytic},
            {"samples", r.samples_used}};
  if (r.counterexample) j["counterexample"] = {to_json(r.counterexample->first), to_json(r.counterexample->second)};
  return j;
}

void emit(const Json& j) {
  std::cout << j.dump(2) << "\n";
}

Vector require_vector(const std::string& text, const char* flag) {
  if (text.empty()) throw capra::ArgumentError(std::string(flag) + " is required");
  return capra::parse_vector(text);
}

int resolve_dim(const RunConfig& cfg, const Vector* v) {
  if (v) {
    if (cfg.dim != 0 && cfg.dim != v->size()) throw capra::ArgumentError("--dim disagrees with the vector length");
    return static_cast<int>(v->size());
  }
  if (cfg.dim <= 0) throw capra::ArgumentError("--dim is required");
  return cfg.dim;
}

capra::FactorizationOptions factor_opts(const RunConfig& cfg) {
  capra::FactorizationOptions o;
  o.sphere_shortcut = !cfg.no_shortcut;
  return o;
}

Json header(const char* command, const RunConfig& cfg, int d) {
  return {{"command", command}, {"source", cfg.source}, {"dim", d}};
}

// Random test vectors for the verification suite.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  // Nonzero vector with exactly `l` nonzeros at random positions.
  Vector sparse(int d, int l) {
    std::vector<int> idx(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::shuffle(idx.begin(), idx.end(), rng_);
    Vector v = Vector::Zero(d);
    std::uniform_real_distribution<double> mag(0.2, 2.0);
    std::bernoulli_distribution sign(0.5);
    for (int i = 0; i < l; ++i) v[idx[static_cast<std::size_t>(i)]] = (sign(rng_) ? 1.0 : -1.0) * mag(rng_);
    return v;
  }

  int level(int d) { return std::uniform_int_distribution<int>(1, d)(rng_); }

 private:
  std::mt19937_64 rng_;
};

int cmd_norm(const RunConfig& cfg, const std::string& kind, int k) {
  const bool primal = kind == "support" || kind == "primal";
  const std::string& text = primal ? (cfg.x.empty() ? cfg.y : cfg.x) : (cfg.y.empty() ? cfg.x : cfg.y);
  const Vector v = require_vector(text, primal ? "--x" : "--y");
  const int d = resolve_dim(cfg, &v);
  const capra::KNormFamily f(capra::parse_source(cfg.source), d);
  Json j = header("norm", cfg, d);
  j["kind"] = kind;
  j["input"] = to_json(v);
  if (kind == "primal") {
    j["value"] = capra::norm(f.source(), v);
  } else if (kind == "dual") {
    j["value"] = capra::dual_norm(f.source(), v);
  } else {
    if (k < 0 || k > d) throw capra::ArgumentError("--k must lie in [0, dim]");
    j["k"] = k;
    if (kind == "top") {
      const capra::TopKValue t = capra::top_k_dual_norm_support(f, v, k);
      j["value"] = t.value;
      j["support"] = t.support.indices();
    } else if (kind == "coordinate") {
      j["value"] = capra::coordinate_k_dual_norm(f, v, k);
    } else {
      if (k == 0) throw capra::ArgumentError("support norms need k >= 1");
      const capra::KSupportValue s = capra::k_support_dual_norm_bracket(f, v, k);
      j["value"] = s.value;
      j["lower"] = s.lower;
      j["upper"] = s.upper;
      j["method"] = s.method;
      if (!s.blocks.empty()) {
        Json blocks = Json::array();
        for (const Vector& b : s.blocks) blocks.push_back(to_json(b));
        j["blocks"] = blocks;
      }
      if (s.dual_witness.size() > 0) j["dual_witness"] = to_json(s.dual_witness);
    }
  }
  emit(j);
  return kExitOk;
}

int cmd_conj(const RunConfig& cfg) {
  const Vector y = require_vector(cfg.y, "--y");
  const int d = resolve_dim(cfg, &y);
  const capra::KNormFamily f(capra::parse_source(cfg.source), d);
  const capra::PhiFunction phi = capra::parse_phi(cfg.phi, d);
  const capra::ConjugateValue c = capra::capra_conjugate(f, phi, y);
  Json j = header("conj", cfg, d);
  j["phi"] = phi.values();
  j["y"] = to_json(y);
  j["value"] = c.value;
  j["argmax"] = c.argmax;
  j["terms"] = c.terms;
  emit(j);
  return kExitOk;
}

int cmd_biconj(const RunConfig& cfg) {
  const Vector x = require_vector(cfg.x, "--x");
  const int d = resolve_dim(cfg, &x);
  const capra::KNormFamily f(capra::parse_source(cfg.source), d);
  const capra::PhiFunction phi = capra::parse_phi(cfg.phi, d);
  Json j = header("biconj", cfg, d);
  j["phi"] = phi.values();
  j["x"] = to_json(x);
  j["l0"] = capra::l0(x);
  j["result"] = bracket_json(capra::capra_biconjugate(f, phi, x, factor_opts(cfg)));
  emit(j);
  return kExitOk;
}

int cmd_l0fun(const RunConfig& cfg, const std::string& to, int n) {
  const Vector x = require_vector(cfg.x, "--x");
  const int d = resolve_dim(cfg, &x);
  const capra::KNormFamily f(capra::parse_source(cfg.source), d);
  const capra::PhiFunction phi = capra::parse_phi(cfg.phi, d);
  const capra::FactorizationOptions opts = factor_opts(cfg);
  if (to.empty()) {
    Json j = header("l0fun", cfg, d);
    j["phi"] = phi.values();
    j["x"] = to_json(x);
    j["norm"] = capra::norm(f.source(), x);
    j["result"] = bracket_json(capra::eval_L0(f, phi, x, opts));
    emit(j);
    return kExitOk;
  }
  // Sweep along the segment from x to `to`.
  const Vector end = capra::parse_vector(to);
  capra::require_same_size(x, end, "--to");
  if (n < 2) throw capra::ArgumentError("--n must be at least 2");
  std::cout << std::setprecision(17);
  if (cfg.output == "csv") std::cout << "t,norm,value,lower,upper,method\n";
  Json points = Json::array();
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    const Vector p = (1.0 - t) * x + t * end;
    const capra::BracketedValue b = capra::eval_L0(f, phi, p, opts);
    const double nv = capra::norm(f.source(), p);
    if (cfg.output == "csv") {
      std::cout << t << "," << nv << "," << b.value() << "," << (b.infinite ? b.value() : b.lower) << ","
                << (b.infinite ? b.value() : b.upper) << "," << b.method << "\n";
    } else {
      points.push_back({{"t", t}, {"norm", nv}, {"value", number(b.value())}, {"lower", number(b.lower)},
                        {"upper", number(b.upper)}, {"method", b.method}});
    }
  }
  if (cfg.output != "csv") {
    Json j = header("l0fun", cfg, d);
    j["phi"] = phi.values();
    j["from"] = to_json(x);
    j["to"] = to_json(end);
    j["points"] = points;
    emit(j);
  }
  return kExitOk;
}

int cmd_subdiff(const RunConfig& cfg) {
  const Vector x = require_vector(cfg.x, "--x");
  const int d = resolve_dim(cfg, &x);
  const capra::KNormFamily f(capra::parse_source(cfg.source), d);
  const capra::PhiFunction phi = capra::parse_phi(cfg.phi, d);
  Json j = header("subdiff", cfg, d);
  j["phi"] = phi.values();
  j["x"] = to_json(x);
  if (!cfg.y.empty()) {
    const Vector y = capra::parse_vector(cfg.y);
    const capra::MembershipDiagnostics m = capra::subdiff_membership(f, phi, x, y, cfg.tol);
    j["mode"] = "membership";
    j["y"] = to_json(y);
    j["tol"] = cfg.tol;
    j["membership"] = membership_json(m);
    emit(j);
    return m.member ? kExitOk : kExitFailed;
  }
  const capra::SubgradientCertificate c = capra::subgradient_construct(f, phi, x);
  j["mode"] = "construct";
  j["y"] = to_json(c.y);
  j["lambda"] = c.lambda;
  j["y0"] = to_json(c.y0);
  j["membership"] = membership_json(c.conditions);
  emit(j);
  return c.conditions.member ? kExitOk : kExitFailed;
}

int cmd_check(const RunConfig& cfg, const std::string& what) {
  // Monotonicity sampling is cheap, so it gets a much larger default.
  const int samples = cfg.samples > 0 ? cfg.samples : (what == "monotonicity" ? 10000 : 200);
  std::optional<Vector> xv;
  std::optional<Vector> yv;
  if (!cfg.x.empty()) xv = capra::parse_vector(cfg.x);
  if (!cfg.y.empty()) yv = capra::parse_vector(cfg.y);
  const int d = resolve_dim(cfg, xv ? &*xv : (yv ? &*yv : nullptr));
  const capra::SourceNorm src = capra::parse_source(cfg.source);
  Json j = header("check", cfg, d);
  j["what"] = what;
  j["seed"] = cfg.seed;
  bool ok = true;
  if (what == "monotonicity") {
    const auto om = capra::check_orthant_monotonic(src, d, samples, cfg.seed);
    const auto osm = capra::check_orthant_strictly_monotonic(src, d, samples, cfg.seed);
    const capra::SourceNorm dual = capra::dual_as_source(src);
    const auto dosm = capra::check_orthant_strictly_monotonic(dual, d, samples, cfg.seed);
    j["om"] = mono_json(om);
    j["osm"] = mono_json(osm);
    j["dual_osm"] = mono_json(dosm);
    for (const auto* r : {&om, &osm, &dosm}) {
      if (r->counterexample && !capra::recheck_counterexample(r == &dosm ? dual : src, r->property,
                                                              r->counterexample->first, r->counterexample->second))
        ok = false;
    }
  } else if (what == "chain") {
    const capra::KNormFamily f(src, d);
    const Vector y = yv ? *yv : Sampler(cfg.seed).sparse(d, d);
    const capra::StrictChainReport r = capra::strict_chain_check(f, y);
    j["y"] = to_json(y);
    j["ok"] = r.ok;
    j["level"] = r.level;
    j["chain"] = r.chain;
    j["min_strict_gap"] = number(r.min_strict_gap);
    j["max_tail_residual"] = r.max_tail_residual;
    if (r.failing_index) j["failing_index"] = *r.failing_index;
    ok = r.ok;
  } else if (what == "nesting") {
    const capra::KNormFamily f(src, d);
    const capra::NestingReport r = capra::ball_nesting_check(f, samples, cfg.seed);
    j["ok"] = r.ok;
    j["samples"] = r.samples;
    j["max_layer_residual"] = r.max_layer_residual;
    if (r.violation) {
      j["violation"] = {{"family", r.violation->family}, {"k", r.violation->k},
                        {"witness", to_json(r.violation->witness)}, {"lhs", r.violation->lhs},
                        {"rhs", r.violation->rhs}};
    }
    ok = r.ok;
  } else if (what == "sphere") {
    const capra::KNormFamily f = capra::make_verified_family(src, d);
    const capra::PhiFunction phi = capra::parse_phi(cfg.phi, d);
    capra::FactorizationOptions opts = factor_opts(cfg);
    opts.sphere_shortcut = false;
    const capra::SphereReport r = capra::sphere_coincidence_check(f, phi, samples, cfg.seed, opts);
    j["phi"] = phi.values();
    j["ok"] = r.ok;
    j["samples"] = r.samples;
    j["failures"] = r.failures;
    j["max_residual"] = r.max_residual;
    if (r.worst.size() > 0) j["worst"] = to_json(r.worst);
    ok = r.ok;
  } else if (what == "coincidence") {
    if (!xv) throw capra::ArgumentError("--x is required for the coincidence check");
    const capra::KNormFamily f = capra::make_verified_family(src, d);
    const capra::PhiFunction phi = capra::parse_phi(cfg.phi, d);
    const Vector s = capra::normalize(src, *xv);
    const Vector y = yv ? *yv : capra::subgradient_construct(f, phi, s).y;
    const capra::CoincidenceReport r = capra::rm_subdiff_coincidence_check(f, phi, s, y, cfg.seed, factor_opts(cfg));
    j["phi"] = phi.values();
    j["s"] = to_json(s);
    j["y"] = to_json(y);
    j["agree"] = r.agree;
    j["member"] = r.member;
    j["inequality_holds"] = r.inequality_holds;
    j["probes"] = r.probes;
    j["min_slack"] = r.min_slack;
    if (r.violating_probe) j["violating_probe"] = to_json(*r.violating_probe);
    ok = r.agree;
  } else {
    throw capra::ArgumentError("unknown check '" + what + "'");
  }
  j["ok"] = ok;
  emit(j);
  return ok ? kExitOk : kExitFailed;
}

int cmd_solve(const RunConfig& cfg, const std::string& path) {
  const capra::Instance inst = capra::load_instance(path);
  const int d = inst.set.dim();
  const capra::KNormFamily f = capra::make_verified_family(inst.source, d);
  const capra::SparseSolution s = capra::solve_min_phi_l0(f, inst.phi, inst.set, factor_opts(cfg));
  Json j = {{"command", "solve"}, {"instance", path}, {"source", inst.source.name()}, {"dim", d}};
  j["phi"] = inst.phi.values();
  j["points"] = s.points;
  j["value"] = s.value;
  j["argmin"] = to_json(s.argmin);
  j["argmin_index"] = s.argmin_index;
  if (inst.set.kind() == capra::FeasibleSet::Kind::affine) {
    j["argmin_t"] = inst.set.ts()[static_cast<std::size_t>(s.argmin_index)];
  }
  j["enumeration"] = {{"value", s.enumeration_value}, {"index", s.enumeration_index}};
  j["reformulated"] = {{"value", s.reformulated_value}, {"index", s.reformulated_index}};
  j["max_pointwise_gap"] = s.max_pointwise_gap;
  emit(j);
  return kExitOk;
}

// A reduced run of the acceptance properties on one configuration.
int cmd_verify(const RunConfig& cfg) {
  const int d = resolve_dim(cfg, nullptr);
  const int samples = cfg.samples > 0 ? cfg.samples : 20;
  const capra::SourceNorm src = capra::parse_source(cfg.source);
  const capra::KNormFamily f = capra::make_verified_family(src, d, 2000, cfg.seed);
  const capra::PhiFunction phi = capra::parse_phi(cfg.phi, d);
  const capra::FactorizationOptions opts = factor_opts(cfg);
  Sampler rng(cfg.seed);
  Json checks = Json::array();
  bool all = true;
  auto record = [&](const char* name, bool ok, Json detail) {
    Json entry = {{"name", name}, {"ok", ok}};
    entry.update(detail);
    checks.push_back(entry);
    all = all && ok;
  };

  {
    const capra::NestingReport r = capra::ball_nesting_check(f, samples, cfg.seed);
    record("nesting", r.ok, {{"max_layer_residual", r.max_layer_residual}});
  }
  if (f.osm_pair()) {
    double worst_chain = std::numeric_limits<double>::infinity();
    bool chain_ok = true;
    for (int i = 0; i < samples; ++i) {
      const capra::StrictChainReport r = capra::strict_chain_check(f, rng.sparse(d, rng.level(d)));
      chain_ok = chain_ok && r.ok;
      worst_chain = std::min(worst_chain, r.min_strict_gap);
    }
    record("strict_chain", chain_ok, {{"min_strict_gap", number(worst_chain)}});

    double worst_bi = 0.0;
    bool bi_ok = true;
    bool sub_ok = true;
    double worst_sub = 0.0;
    for (int i = 0; i < samples; ++i) {
      const Vector x = rng.sparse(d, rng.level(d));
      const double target = phi(capra::l0(x));
      const capra::BracketedValue b = capra::capra_biconjugate(f, phi, x, opts);
      const double r = std::max(std::abs(b.value() - target), target - b.lower);
      worst_bi = std::max(worst_bi, r);
      bi_ok = bi_ok && r <= 1e-6;
      const capra::SubgradientCertificate c = capra::subgradient_construct(f, phi, x);
      const capra::MembershipDiagnostics m = capra::subdiff_membership(f, phi, x, c.y, 1e-8);
      sub_ok = sub_ok && m.member;
      worst_sub = std::max({worst_sub, m.normal_cone_residual, m.argmax_residual});
    }
    sub_ok = sub_ok && capra::subdiff_at_zero_membership(f, phi, Vector::Zero(d), 1e-8);
    record("biconjugate", bi_ok, {{"max_residual", worst_bi}});
    record("subgradient", sub_ok, {{"max_residual", worst_sub}});

    capra::FactorizationOptions no_shortcut = opts;
    no_shortcut.sphere_shortcut = false;
    const capra::SphereReport s = capra::sphere_coincidence_check(f, phi, samples, cfg.seed, no_shortcut);
    record("sphere", s.ok, {{"max_residual", s.max_residual}});
  } else {
    record("osm_pair", false, {{"detail", "source or its dual is not orthant-strictly monotonic"}});
  }

  Json j = header("verify", cfg, d);
  j["phi"] = phi.values();
  j["seed"] = cfg.seed;
  j["samples"] = samples;
  j["checks"] = checks;
  j["ok"] = all;
  emit(j);
  return all ? kExitOk : kExitFailed;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool vectors) {
  sub->add_option("--source", cfg.source, "lp:<p>, l1, l2, linf or custom:skew")->capture_default_str();
  sub->add_option("--phi", cfg.phi, "id, sq, zero or table:v0,...,vd")->capture_default_str();
  sub->add_option("--dim", cfg.dim, "ambient dimension (inferred from vectors when given)");
  sub->add_option("--seed", cfg.seed, "random seed (default: $CAPRA_SEED or 1)");
  sub->add_option("--samples", cfg.samples, "sample count for sampled checks");
  sub->add_flag("--no-shortcut", cfg.no_shortcut, "always run the L0 solver, even on the unit sphere");
  sub->add_option("--output", cfg.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  if (vectors) {
    sub->add_option("--x", cfg.x, "primal vector, comma separated");
    sub->add_option("--y", cfg.y, "dual vector, comma separated");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capra conjugacy and l0 factorization toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string kind = "support";
  int k = 1;
  std::string to;
  int n = 11;
  std::string what = "monotonicity";
  std::string instance;

  auto* norm = app.add_subcommand("norm", "top-k, k-support, coordinate-k, primal or dual norm values");
  add_common(norm, cfg, true);
  norm->add_option("--kind", kind)->check(CLI::IsMember({"top", "support", "coordinate", "dual", "primal"}))
      ->capture_default_str();
  norm->add_option("--k", k)->capture_default_str();
  auto* conj = app.add_subcommand("conj", "Capra conjugate of phi o l0 with its argmax levels");
  add_common(conj, cfg, true);
  auto* biconj = app.add_subcommand("biconj", "Capra biconjugate with its bracket");
  add_common(biconj, cfg, true);
  auto* l0fun = app.add_subcommand("l0fun", "L0^phi with a witness decomposition, or a sweep along a segment");
  add_common(l0fun, cfg, true);
  l0fun->add_option("--to", to, "segment end point; enables the sweep");
  l0fun->add_option("--n", n, "number of sweep points")->capture_default_str();
  auto* subdiff = app.add_subcommand("subdiff", "construct a subgradient, or test membership of --y");
  add_common(subdiff, cfg, true);
  subdiff->add_option("--tol", cfg.tol)->capture_default_str();
  auto* check = app.add_subcommand("check", "sampled property checks");
  add_common(check, cfg, true);
  check->add_option("what", what, "monotonicity, chain, nesting, sphere or coincidence")
      ->check(CLI::IsMember({"monotonicity", "chain", "nesting", "sphere", "coincidence"}));
  auto* solve = app.add_subcommand("solve", "minimize phi o l0 over an instance file");
  add_common(solve, cfg, false);
  solve->add_option("instance", instance, "JSON instance")->required();
  auto* verify = app.add_subcommand("verify", "run the property suite on one configuration");
  add_common(verify, cfg, false);

  try {
    cfg.seed = default_seed();
  } catch (const capra::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*norm) return cmd_norm(cfg, kind, k);
    if (*conj) return cmd_conj(cfg);
    if (*biconj) return cmd_biconj(cfg);
    if (*l0fun) return cmd_l0fun(cfg, to, n);
    if (*subdiff) return cmd_subdiff(cfg);
    if (*check) return cmd_check(cfg, what);
    if (*solve) return cmd_solve(cfg, instance);
    if (*verify) return cmd_verify(cfg);
  } catch (const capra::ArgumentError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const capra::UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitUsage;
  } catch (const capra::Error& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}
