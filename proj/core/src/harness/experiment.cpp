#include "qromlab/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "qromlab/attack/attack.hpp"
#include "qromlab/parallel.hpp"
#include "qromlab/protocols/schemes.hpp"
#include "qromlab/rng.hpp"

namespace qromlab::harness {

namespace fs = std::filesystem;

namespace {

int scheme_d(const protocols::QPKEScheme& s) {
  int d = std::max({s.gen.d(), s.enc.d(), s.dec.d()});
  if (s.pkgen) d = std::max(d, s.pkgen->d());
  return d;
}

template <class T>
T field(const nlohmann::json& j, const std::string& key, const std::string& expect) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SpecError(key, "expected " + expect);
  }
}

template <class T>
std::vector<T> scalar_or_list(const nlohmann::json& j, const std::string& key,
                              const std::string& expect) {
  const auto& v = j.at(key);
  if (!v.is_array()) return {field<T>(j, key, expect)};
  std::vector<T> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    try {
      out.push_back(v[i].get<T>());
    } catch (const nlohmann::json::exception&) {
      throw SpecError(key + "[" + std::to_string(i) + "]", "expected " + expect);
    }
  }
  return out;
}

}  // namespace

void ExperimentSpec::validate() const {
  if (schemes.empty()) throw SpecError("schemes", "at least one scheme is required");
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    if (!protocols::is_scheme_name(schemes[i])) {
      std::string known;
      for (const auto& s : protocols::scheme_names()) known += (known.empty() ? "" : ", ") + s;
      throw SpecError("schemes[" + std::to_string(i) + "]",
                      "unknown scheme '" + schemes[i] + "' (known: " + known + ")");
    }
  }
  if (ns.empty()) throw SpecError("n", "at least one value is required");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1 || ns[i] > 3) {
      throw SpecError("n[" + std::to_string(i) + "]", "toy schemes support n in {1, 2, 3}");
    }
  }
  if (d) {
    for (std::size_t i = 0; i < schemes.size(); ++i) {
      const int sd = scheme_d(protocols::make_scheme(schemes[i], ns.front()));
      if (sd != *d) {
        throw SpecError("d", "scheme '" + schemes[i] + "' makes " + std::to_string(sd) +
                                 " queries, spec says " + std::to_string(*d));
      }
    }
  }
  if (epsilons.empty()) throw SpecError("epsilons", "at least one value is required");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0 && epsilons[i] < 1.0)) {
      throw SpecError("epsilons[" + std::to_string(i) + "]", "epsilon must lie in (0, 1)");
    }
  }
  if (seeds < 1) throw SpecError("seeds", "must be >= 1");
  if (m && *m < 1) throw SpecError("m", "must be >= 1");
  if (step1_reps && *step1_reps < 1) throw SpecError("step1_reps", "must be >= 1");
  if (copies_t && *copies_t < 1) throw SpecError("copies_t", "must be >= 1");
  if (heavy_threshold && !(*heavy_threshold > 0.0)) throw SpecError("heavy_threshold", "must be > 0");
  if (jobs < 1) throw SpecError("jobs", "must be >= 1");
}

attack::AttackConfig ExperimentSpec::attack_config(double epsilon) const {
  attack::AttackConfig cfg;
  cfg.epsilon = epsilon;
  cfg.m = m;
  cfg.step1_reps = step1_reps;
  cfg.copies_t = copies_t;
  cfg.heavy_threshold = heavy_threshold;
  cfg.mode = mode;
  cfg.seed = seed;
  cfg.recovery = recovery;
  return cfg;
}

ExperimentSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SpecError("$", "spec must be a JSON object");
  static const std::vector<std::string> known{
      "schemes", "scheme", "n", "d", "epsilons", "epsilon", "oracles", "mode", "seed", "seeds",
      "m", "step1_reps", "copies_t", "heavy_threshold", "recovery", "jobs", "out_dir"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      throw SpecError(it.key(), "unknown field");
    }
  }
  ExperimentSpec s;
  if (j.contains("schemes")) {
    s.schemes = scalar_or_list<std::string>(j, "schemes", "a scheme name or list of names");
  } else if (j.contains("scheme")) {
    s.schemes = {field<std::string>(j, "scheme", "a scheme name")};
  }
  if (j.contains("n")) s.ns = scalar_or_list<int>(j, "n", "an integer or list of integers");
  if (j.contains("d")) s.d = field<int>(j, "d", "an integer");
  if (j.contains("epsilons")) {
    s.epsilons = scalar_or_list<double>(j, "epsilons", "a number or list of numbers");
  } else if (j.contains("epsilon")) {
    s.epsilons = {field<double>(j, "epsilon", "a number")};
  }
  if (j.contains("oracles")) {
    const auto& o = j.at("oracles");
    if (o.is_string()) {
      if (o.get<std::string>() != "all") throw SpecError("oracles", "expected \"all\" or {\"sample\": k}");
    } else if (o.is_object() && o.contains("sample")) {
      try {
        const auto k = o.at("sample").get<std::int64_t>();
        if (k < 1) throw SpecError("oracles.sample", "must be >= 1");
        s.oracles.sample = static_cast<std::size_t>(k);
      } catch (const nlohmann::json::exception&) {
        throw SpecError("oracles.sample", "expected a positive integer");
      }
    } else {
      throw SpecError("oracles", "expected \"all\" or {\"sample\": k}");
    }
  }
  if (j.contains("mode")) {
    try {
      s.mode = attack::attack_mode_from_string(field<std::string>(j, "mode", "\"exact\" or \"sampled\""));
    } catch (const InvalidArgument& e) {
      throw SpecError("mode", e.what());
    }
  }
  if (j.contains("seed")) s.seed = field<std::uint64_t>(j, "seed", "a nonnegative integer");
  if (j.contains("seeds")) s.seeds = field<int>(j, "seeds", "a positive integer");
  if (j.contains("m")) s.m = field<int>(j, "m", "a positive integer");
  if (j.contains("step1_reps")) s.step1_reps = field<std::int64_t>(j, "step1_reps", "a positive integer");
  if (j.contains("copies_t")) s.copies_t = field<int>(j, "copies_t", "a positive integer");
  if (j.contains("heavy_threshold")) s.heavy_threshold = field<double>(j, "heavy_threshold", "a number");
  if (j.contains("recovery")) {
    try {
      s.recovery = info_theory::recovery_kind_from_string(field<std::string>(j, "recovery", "a recovery kind"));
    } catch (const InvalidArgument& e) {
      throw SpecError("recovery", e.what());
    }
  }
  if (j.contains("jobs")) s.jobs = field<unsigned>(j, "jobs", "a positive integer");
  if (j.contains("out_dir")) s.out_dir = field<std::string>(j, "out_dir", "a path");
  s.validate();
  return s;
}

ExperimentSpec load_spec(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("$", "cannot read spec file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError("$", std::string("invalid JSON: ") + e.what());
  }
  return spec_from_json(j);
}

nlohmann::json to_json(const ExperimentSpec& s) {
  nlohmann::json j{{"schemes", s.schemes},
                   {"n", s.ns},
                   {"epsilons", s.epsilons},
                   {"mode", attack::to_string(s.mode)},
                   {"seed", s.seed},
                   {"seeds", s.seeds},
                   {"recovery", info_theory::to_string(s.recovery)},
                   {"jobs", s.jobs}};
  j["oracles"] = s.oracles.sample == 0 ? nlohmann::json("all") : nlohmann::json{{"sample", s.oracles.sample}};
  if (s.d) j["d"] = *s.d;
  if (s.m) j["m"] = *s.m;
  if (s.step1_reps) j["step1_reps"] = *s.step1_reps;
  if (s.copies_t) j["copies_t"] = *s.copies_t;
  if (s.heavy_threshold) j["heavy_threshold"] = *s.heavy_threshold;
  if (!s.out_dir.empty()) j["out_dir"] = s.out_dir;
  return j;
}

std::vector<GridPoint> grid(const ExperimentSpec& spec) {
  std::vector<GridPoint> out;
  for (const auto& s : spec.schemes) {
    for (int n : spec.ns) {
      for (double e : spec.epsilons) out.push_back({s, n, e});
    }
  }
  return out;
}

std::string row_key(const GridPoint& p, attack::AttackMode mode) {
  std::ostringstream os;
  os << p.scheme << "_n" << p.n << "_eps" << std::setprecision(12) << p.epsilon << "_"
     << attack::to_string(mode);
  return os.str();
}

PointResult run_point(const ExperimentSpec& spec, const GridPoint& point) {
  const auto cfg = spec.attack_config(point.epsilon);
  attack::AttackSession session(protocols::make_scheme(point.scheme, point.n), cfg, spec.jobs);
  const auto& family = session.family();

  std::vector<std::size_t> chosen(family.size());
  std::iota(chosen.begin(), chosen.end(), std::size_t{0});
  if (spec.oracles.sample > 0 && spec.oracles.sample < family.size()) {
    auto rng = stream_rng(spec.seed, 0, 0x5e1ec7);
    std::shuffle(chosen.begin(), chosen.end(), rng);
    chosen.resize(spec.oracles.sample);
    std::sort(chosen.begin(), chosen.end());
  }
  const std::size_t per_oracle =
      spec.mode == attack::AttackMode::sampled ? static_cast<std::size_t>(spec.seeds) : 1;
  const std::size_t trials = chosen.size() * per_oracle;

  std::vector<attack::AttackResult> results(trials);
  parallel_for(trials, spec.jobs, [&](std::size_t k) {
    results[k] = session.run(family[chosen[k / per_oracle]], k);
  });

  PointResult out;
  const auto& params = session.params();
  const double budget = spec.mode == attack::AttackMode::sampled
                            ? 10.0 * attack::query_formula(params.n, params.d, params.epsilon)
                            : 0.0;
  out.row = make_row(attack::summarize(results), point.n, attack::to_json(params), budget,
                     cfg.policy);
  out.row.scheme = session.ka().scheme.name;
  for (const auto& r : results) out.records.push_back(trial_record(r, cfg.policy));
  return out;
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write " + tmp.string());
    out << text;
  }
  fs::rename(tmp, path);  // markers appear atomically
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

GridReport run_grid(const ExperimentSpec& spec, const fs::path& out_dir,
                    const GridRunOptions& options) {
  spec.validate();
  const fs::path rows_dir = out_dir / "rows";
  const fs::path records_dir = out_dir / "records";
  fs::create_directories(rows_dir);
  fs::create_directories(records_dir);
  write_text(out_dir / "spec.json", to_json(spec).dump(2) + "\n");

  GridReport report;
  const auto points = grid(spec);
  for (const auto& p : points) {
    const std::string key = row_key(p, spec.mode);
    const fs::path done = rows_dir / (key + ".done");
    const fs::path failed = rows_dir / (key + ".failed");
    if (options.resume && fs::exists(done)) {
      report.rows.push_back(row_from_json(nlohmann::json::parse(read_text(done))));
      ++report.skipped;
      if (options.progress) options.progress(p, "skipped");
      continue;
    }
    try {
      PointResult r = run_point(spec, p);
      std::string lines;
      for (const auto& rec : r.records) lines += rec.dump() + "\n";
      write_text(records_dir / (key + ".jsonl"), lines);
      write_text(done, to_json(r.row).dump() + "\n");
      fs::remove(failed);
      report.rows.push_back(std::move(r.row));
      ++report.completed;
      if (options.progress) options.progress(p, "ok");
    } catch (const std::exception& e) {
      ReportRow row = failed_row(p.scheme, p.n, p.epsilon, attack::to_string(spec.mode), e.what(),
                                 spec.attack_config(p.epsilon).policy);
      write_text(failed, to_json(row).dump() + "\n");
      report.rows.push_back(std::move(row));
      ++report.failed;
      if (options.progress) options.progress(p, std::string("failed: ") + e.what());
    }
  }

  std::string all;
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& p : points) {
    const fs::path rec = records_dir / (row_key(p, spec.mode) + ".jsonl");
    if (fs::exists(rec)) all += read_text(rec);
  }
  for (const auto& r : report.rows) summary.push_back(to_json(r));
  write_text(out_dir / "records.jsonl", all);
  write_text(out_dir / "summary.json", summary.dump(2) + "\n");
  write_csv(out_dir / "summary.csv", report.rows);
  return report;
}

}  // namespace qromlab::harness
