#include "radlab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <thread>

#include "radlab/version.hpp"

namespace radlab {

namespace {

struct PlannedBound {
  BoundId id;
  BoundParams params;
};

std::vector<PlannedBound> plan_bounds(const SweepConfig& config) {
  std::vector<std::string> names = config.bounds;
  if (names.size() == 1 && names[0] == "all") {
    names.clear();
    for (const BoundInfo& info : bound_catalog()) names.push_back(info.name);
  }
  std::vector<PlannedBound> plan;
  for (const std::string& name : names) {
    const auto id = bound_id_from_name(name);
    if (!id) throw ConfigError("unknown bound id '" + name + "'");
    const BoundInfo& info = bound_info(*id);
    if (!info.parametrized) {
      plan.push_back({*id, {}});
      continue;
    }
    const std::vector<double>& rs =
        (*id == BoundId::norm_power) ? config.norm_power_r : config.r_values;
    for (double r : rs) {
      BoundParams params;
      params.r = r;
      plan.push_back({*id, params});
    }
  }
  return plan;
}

struct WorkItem {
  std::size_t index;
  GeneratorSpec spec;
  std::uint64_t stream;  // also seeds primitive operands and optimizers
};

std::vector<WorkItem> plan_items(const SweepConfig& config) {
  std::vector<WorkItem> items;
  for (std::size_t t = 0; t < config.generators.size(); ++t) {
    const std::string& tmpl = config.generators[t];
    for (int i = 0; i < config.count; ++i) {
      const std::uint64_t stream = CounterRng::derive(
          config.seed, static_cast<std::uint64_t>(t),
          static_cast<std::uint64_t>(i));
      GeneratorSpec spec;
      if (tmpl.rfind("named:", 0) == 0 || tmpl.find(':') != std::string::npos) {
        spec = GeneratorSpec::parse(
            tmpl.rfind("named:", 0) == 0 ? tmpl
                                         : tmpl + ":" + std::to_string(stream));
      } else {
        spec.kind = GeneratorSpec::parse(tmpl + ":2:0").kind;
        spec.dim = config.dims[static_cast<std::size_t>(i) %
                               config.dims.size()];
        spec.seed = stream;
      }
      items.push_back({items.size(), spec, stream});
    }
  }
  return items;
}

// Primitive operands derived from the item stream; each draw is replayable.
PrimitiveOperands primitive_operands(BoundId id, const BoundParams& params,
                                     const WorkItem& item, int dim) {
  PrimitiveOperands ops;
  ops.r = params.r;
  CounterRng rng(item.stream,
                 CounterRng::derive(0x5052494Dull,
                                    static_cast<std::uint64_t>(id)));
  const auto unit = [&](int n) {
    Vector x(n);
    for (int i = 0; i < n; ++i) x(i) = rng.next_complex_gaussian();
    const double nx = x.norm();
    return nx > 0 ? Vector(x / nx) : Vector(Vector::Unit(n, 0));
  };
  const auto loose = [&](int n) {
    Vector x(n);
    for (int i = 0; i < n; ++i) x(i) = rng.next_complex_gaussian();
    return x;
  };
  const auto psd = [&](int n) {
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = rng.next_complex_gaussian();
    return Matrix(g.adjoint() * g);
  };
  const auto ginibre = [&](int n) {
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = rng.next_complex_gaussian();
    return g;
  };

  switch (id) {
    case BoundId::lem_log:
      ops.scalars = {1.0 + 4.0 * std::abs(rng.next_gaussian())};
      break;
    case BoundId::zou:
      ops.scalars = {std::exp(rng.next_gaussian()),
                     std::exp(rng.next_gaussian())};
      break;
    case BoundId::mixed_schwarz:
      ops.matrices = {ginibre(dim)};
      ops.vectors = {unit(dim), unit(dim)};
      break;
    case BoundId::norm_sum:
    case BoundId::norm_power:
      ops.matrices = {psd(dim), psd(dim)};
      break;
    case BoundId::vec_cs:
      ops.vectors = {loose(dim), loose(dim)};
      break;
    case BoundId::gram_lemma: {
      const int nz = 1 + static_cast<int>(rng.next_u64() % 3);
      const int vdim = std::max(dim, 3);
      ops.vectors.push_back(loose(vdim));
      ops.vectors.push_back(loose(vdim));
      for (int i = 0; i < nz; ++i) ops.vectors.push_back(loose(vdim));
      break;
    }
    case BoundId::kian_lemma: {
      const double u = rng.next_double();
      ops.matrices = {psd(dim), psd(dim)};
      ops.weights = {u, 1.0 - u};
      ops.r = 2.0;
      break;
    }
    default:
      throw ConfigError("not a primitive bound");
  }
  return ops;
}

}  // namespace

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RADIUS_LAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

SweepConfig SweepConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be an object");
  SweepConfig config;
  const auto get = [&](const char* key, auto& into) {
    if (!j.contains(key)) return;
    try {
      into = j[key].template get<std::decay_t<decltype(into)>>();
    } catch (const nlohmann::json::exception& err) {
      throw ConfigError(std::string("bad config field '") + key +
                        "': " + err.what());
    }
  };
  get("generators", config.generators);
  get("dims", config.dims);
  get("count", config.count);
  get("bounds", config.bounds);
  get("r_values", config.r_values);
  get("norm_power_r", config.norm_power_r);
  get("radius_tol_rel", config.radius_tol_rel);
  get("slack_abs", config.slack_abs);
  get("slack_rel", config.slack_rel);
  get("threads", config.threads);
  get("seed", config.seed);
  get("out", config.out);

  if (config.count < 0) throw ConfigError("count must be >= 0");
  if (config.dims.empty()) throw ConfigError("dims must be nonempty");
  for (int d : config.dims) {
    if (d < 1 || d > 64) throw ConfigError("dims entries must be in [1, 64]");
  }
  for (const std::string& g : config.generators) {
    GeneratorSpec::parse(g.find(':') == std::string::npos ? g + ":2:0" : g);
  }
  for (double r : config.r_values) {
    if (!(r >= 1.0 && r <= 2.0)) {
      throw ConfigError("r_values must lie in [1, 2]");
    }
  }
  for (double r : config.norm_power_r) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw ConfigError("norm_power_r must lie in [0, 1]");
    }
  }
  plan_bounds(config);  // rejects unknown bound ids
  return config;
}

nlohmann::json SweepConfig::to_json() const {
  return nlohmann::json{
      {"generators", generators}, {"dims", dims},
      {"count", count},           {"bounds", bounds},
      {"r_values", r_values},     {"norm_power_r", norm_power_r},
      {"radius_tol_rel", radius_tol_rel},
      {"slack_abs", slack_abs},   {"slack_rel", slack_rel},
      {"threads", threads},       {"seed", seed},
      {"out", out}};
}

nlohmann::json SweepReport::to_json() const {
  nlohmann::json bounds = nlohmann::json::array();
  for (const BoundStats& s : per_bound) {
    nlohmann::json entry{{"id", s.id},
                         {"evaluated", s.evaluated},
                         {"applicable", s.applicable},
                         {"passed", s.passed},
                         {"failed", s.applicable - s.passed},
                         {"not_applicable", s.evaluated - s.applicable}};
    if (s.applicable > 0) {
      entry["worst_slack"] = s.worst_slack;
      entry["worst_spec"] = s.worst_spec;
    }
    bounds.push_back(std::move(entry));
  }
  return nlohmann::json{{"version", kCatalogVersion},
                        {"config", config.to_json()},
                        {"samples", samples},
                        {"bounds", std::move(bounds)},
                        {"violations", violations}};
}

SweepReport run_sweep(const SweepConfig& config) {
  const std::vector<PlannedBound> bounds = plan_bounds(config);
  const std::vector<WorkItem> items = plan_items(config);

  std::vector<std::vector<BoundReport>> results(items.size());
  std::atomic<std::size_t> cursor{0};

  const auto worker = [&]() {
    while (true) {
      const std::size_t k = cursor.fetch_add(1);
      if (k >= items.size()) return;
      const WorkItem& item = items[k];
      const Matrix a = generate(item.spec);

      EvalOptions opts;
      opts.radius_tol_rel = config.radius_tol_rel;
      opts.slack_abs = config.slack_abs;
      opts.slack_rel = config.slack_rel;
      opts.optimizer.seed = CounterRng::derive(item.stream, 0x4F505453ull);

      BoundContext context(a, opts);
      std::vector<BoundReport> reports;
      reports.reserve(bounds.size());
      for (const PlannedBound& b : bounds) {
        if (bound_info(b.id).primitive) {
          reports.push_back(evaluate_primitive_check(
              b.id,
              primitive_operands(b.id, b.params, item,
                                 static_cast<int>(a.rows())),
              opts));
          reports.back().inputs_digest = item.spec.to_string();
        } else {
          reports.push_back(context.evaluate(b.id, b.params));
        }
      }
      results[k] = std::move(reports);
    }
  };

  const int nthreads =
      std::min<int>(resolve_thread_count(config.threads),
                    std::max<std::size_t>(items.size(), 1));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  // Canonical order: by item index, then by planned bound order.
  SweepReport report;
  report.config = config;
  report.samples = static_cast<long>(items.size());
  std::map<std::string, BoundStats> stats;
  for (std::size_t k = 0; k < items.size(); ++k) {
    for (const BoundReport& r : results[k]) {
      BoundStats& s = stats[r.id];
      s.id = r.id;
      ++s.evaluated;
      if (!r.applicable) continue;
      ++s.applicable;
      const bool pass = r.slack_safe >= -r.threshold;
      if (pass) ++s.passed;
      if (r.slack_safe < s.worst_slack) {
        s.worst_slack = r.slack_safe;
        s.worst_spec = items[k].spec.to_string();
      }
      if (!pass) {
        report.violations.push_back(
            {{"id", r.id},
             {"spec", items[k].spec.to_string()},
             {"digest", r.inputs_digest},
             {"lhs", r.lhs},
             {"rhs", r.rhs},
             {"slack_safe", r.slack_safe},
             {"threshold", r.threshold}});
      }
    }
  }
  for (auto& [_, s] : stats) report.per_bound.push_back(std::move(s));
  return report;
}

}  // namespace radlab
