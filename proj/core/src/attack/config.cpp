#include "qromlab/attack/config.hpp"

#include <algorithm>
#include <cmath>

#include "qromlab/error.hpp"

namespace qromlab::attack {

std::string to_string(AttackMode mode) {
  return mode == AttackMode::exact ? "exact" : "sampled";
}

AttackMode attack_mode_from_string(const std::string& s) {
  if (s == "exact") return AttackMode::exact;
  if (s == "sampled") return AttackMode::sampled;
  throw InvalidArgument("unknown attack mode '" + s + "' (expected exact or sampled)");
}

void AttackConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidArgument("attack config: epsilon must lie in (0, 1), got " +
                          std::to_string(epsilon));
  }
  if (m && *m < 1) throw InvalidArgument("attack config: m must be >= 1");
  if (step1_reps && *step1_reps < 1) throw InvalidArgument("attack config: step1_reps must be >= 1");
  if (copies_t && *copies_t < 1) throw InvalidArgument("attack config: copies_t must be >= 1");
  if (heavy_threshold && !(*heavy_threshold > 0.0)) {
    throw InvalidArgument("attack config: heavy_threshold must be positive");
  }
  if (grid.points < 1) throw InvalidArgument("attack config: rotation grid needs >= 1 point");
}

int default_m(int d, double epsilon) {
  return std::max(1, static_cast<int>(std::ceil(d * d / (epsilon * epsilon) - 1e-9)));
}

std::int64_t default_step1_reps(int d, double epsilon) {
  const double d6 = std::pow(d, 6);
  const double reps = d6 / std::pow(epsilon, 4) * std::log(d6 / std::pow(epsilon, 5));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(reps - 1e-9)));
}

int default_copies(int d, int n, double epsilon) {
  return std::max(1, static_cast<int>(std::ceil(4.0 * d * n / (epsilon * epsilon) - 1e-9)));
}

double default_heavy_threshold(int d, double epsilon) {
  return std::pow(epsilon, 4) / std::pow(d, 5);
}

double query_formula(int n, int d, double epsilon) {
  return std::pow(d, 7) * std::log(d / epsilon) / std::pow(epsilon, 4) +
         n * d * d / (epsilon * epsilon);
}

AttackParameters resolve(const AttackConfig& cfg, int n, int d) {
  cfg.validate();
  AttackParameters p;
  p.n = n;
  p.d = std::max(1, d);
  p.epsilon = cfg.epsilon;
  p.m = cfg.m.value_or(default_m(p.d, p.epsilon));
  p.step1_reps = cfg.step1_reps.value_or(default_step1_reps(p.d, p.epsilon));
  p.copies_t = cfg.copies_t.value_or(default_copies(p.d, n, p.epsilon));
  p.heavy_threshold = cfg.heavy_threshold.value_or(default_heavy_threshold(p.d, p.epsilon));
  if (cfg.m) p.overridden.push_back("m");
  if (cfg.step1_reps) p.overridden.push_back("step1_reps");
  if (cfg.copies_t) p.overridden.push_back("copies_t");
  if (cfg.heavy_threshold) p.overridden.push_back("heavy_threshold");
  return p;
}

nlohmann::json to_json(const AttackConfig& cfg) {
  nlohmann::json j{{"epsilon", cfg.epsilon},
                   {"mode", to_string(cfg.mode)},
                   {"seed", cfg.seed},
                   {"recovery", info_theory::to_string(cfg.recovery)},
                   {"rotation_points", cfg.grid.points},
                   {"rotation_extent", cfg.grid.extent}};
  if (cfg.m) j["m"] = *cfg.m;
  if (cfg.step1_reps) j["step1_reps"] = *cfg.step1_reps;
  if (cfg.copies_t) j["copies_t"] = *cfg.copies_t;
  if (cfg.heavy_threshold) j["heavy_threshold"] = *cfg.heavy_threshold;
  return j;
}

AttackConfig config_from_json(const nlohmann::json& j) {
  AttackConfig cfg;
  cfg.epsilon = j.value("epsilon", cfg.epsilon);
  if (j.contains("mode")) cfg.mode = attack_mode_from_string(j.at("mode").get<std::string>());
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("recovery")) {
    cfg.recovery = info_theory::recovery_kind_from_string(j.at("recovery").get<std::string>());
  }
  cfg.grid.points = j.value("rotation_points", cfg.grid.points);
  cfg.grid.extent = j.value("rotation_extent", cfg.grid.extent);
  if (j.contains("m")) cfg.m = j.at("m").get<int>();
  if (j.contains("step1_reps")) cfg.step1_reps = j.at("step1_reps").get<std::int64_t>();
  if (j.contains("copies_t")) cfg.copies_t = j.at("copies_t").get<int>();
  if (j.contains("heavy_threshold")) cfg.heavy_threshold = j.at("heavy_threshold").get<double>();
  cfg.validate();
  return cfg;
}

nlohmann::json to_json(const AttackParameters& p) {
  return {{"n", p.n},
          {"d", p.d},
          {"epsilon", p.epsilon},
          {"m", p.m},
          {"step1_reps", p.step1_reps},
          {"copies_t", p.copies_t},
          {"heavy_threshold", p.heavy_threshold},
          {"overridden", p.overridden}};
}

}  // namespace qromlab::attack
