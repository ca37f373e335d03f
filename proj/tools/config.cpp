#include "config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "dramcell/cell_model.hpp"

namespace dramcell::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& section, const std::string& key,
                 const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("[" + section + "] " + key + ": not a number: '" +
                      value + "'");
  }
}

std::uint64_t to_u64(const std::string& section, const std::string& key,
                     const std::string& value) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
    throw ConfigError("[" + section + "] " + key +
                      ": not a non-negative integer: '" + value + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string cur;
  std::istringstream in(value);
  while (std::getline(in, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) items.push_back(cur);
  }
  return items;
}

Mechanism parse_mechanism(const std::string& where, const std::string& value) {
  const auto m = mechanism_from_string(value);
  if (!m)
    throw ConfigError(where + ": unknown mechanism '" + value +
                      "' (retention|rowhammer|rowpress)");
  return *m;
}

const std::set<std::string> kDimms = {"D1", "D2", "D3", "D4",
                                      "D5", "D6", "D7"};

}  // namespace

ConfigDoc parse_config_text(const std::string& text) {
  ConfigDoc doc;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": empty section name");
      doc.try_emplace(section);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    if (section.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": key outside any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key");
    if (!doc[section].emplace(key, value).second)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
  }
  return doc;
}

ConfigDoc load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

StressSpec RunConfig::stress_for(Mechanism mech, PatternClass pat) const {
  StressSpec s;
  switch (mech) {
    case Mechanism::Rowhammer:
      s = StressSpec::rowhammer(pat, hc_budget.value_or(kDefaultHcBudgetRowhammer));
      break;
    case Mechanism::Rowpress:
      s = StressSpec::rowpress(pat, hc_budget.value_or(kDefaultHcBudgetRowpress),
                               t_aggon_s);
      break;
    case Mechanism::Retention:
      s = StressSpec::retention(pat, time_budget_s);
      break;
  }
  if (f_rd_hz && is_disturbance(mech)) s.f_rd_hz = *f_rd_hz;
  return s;
}

DeviceProfile RunConfig::resolve_profile(const std::string& dimm,
                                         Mechanism mech) const {
  if (dimm == "custom") {
    if (!custom_profile)
      throw ConfigError("profile 'custom' requires a [custom_profile] section");
    if (custom_profile->mechanism != mech)
      throw ConfigError("custom profile mechanism does not match the request");
    return *custom_profile;
  }
  const auto p = find_profile(dimm, mech);
  if (!p)
    throw ConfigError("unknown profile '" + dimm +
                      "' (expected D1..D7 or custom)");
  return *p;
}

std::map<std::string, std::string> RunConfig::echo() const {
  std::map<std::string, std::string> e;
  const auto put_d = [&](const std::string& k, double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    e[k] = os.str();
  };
  e["run.command"] = command;
  e["run.profile"] = profile;
  e["run.mechanism"] = to_string(mechanism);
  e["run.pattern"] = pattern_both ? "both" : to_string(pattern);
  e["run.n"] = std::to_string(n);
  e["run.seed"] = std::to_string(seed);
  e["stress.hc_budget"] = std::to_string(
      hc_budget.value_or(mechanism == Mechanism::Rowpress
                             ? kDefaultHcBudgetRowpress
                             : kDefaultHcBudgetRowhammer));
  put_d("stress.time_budget_s", time_budget_s);
  put_d("stress.t_aggon_s", t_aggon_s);
  put_d("stress.f_rd_hz", f_rd_hz.value_or(
                              mechanism == Mechanism::Rowpress
                                  ? rowpress_rate_hz(t_aggon_s)
                                  : rowhammer_rate_hz()));
  put_d("retention.t0_s", retention_t0_s);
  put_d("retention.refine_rel_width", refine_rel_width);
  e["extract.source"] = extract_source;
  e["extract.n_target"] = std::to_string(n_target);
  e["extract.hc_init"] = std::to_string(hc_init);
  {
    std::string ps;
    for (const auto& p : analyze_profiles) ps += (ps.empty() ? "" : ",") + p;
    e["analyze.profiles"] = ps;
    std::string ms;
    for (const auto m : analyze_mechanisms)
      ms += (ms.empty() ? "" : ",") + std::string(to_string(m));
    e["analyze.mechanisms"] = ms;
  }
  e["analyze.m_010"] = std::to_string(m_010);
  e["analyze.source"] = analyze_source;
  e["report.source"] = report_source;
  e["sampling.distribution"] =
      sampling.distribution == RangeDistribution::LogUniform ? "log_uniform"
                                                             : "log_normal";
  put_d("sampling.rho", sampling.rho);
  put_d("sampling.noise_lo_v", sampling.noise_lo_v);
  put_d("sampling.noise_hi_v", sampling.noise_hi_v);
  put_d("sampling.c_s_f", sampling.c_s);
  put_d("constants.v_dd", constants.vdd);
  put_d("constants.v_flip", constants.v_flip);
  put_d("constants.v_sa", constants.v_sa);
  put_d("constants.alpha", constants.alpha);
  put_d("constants.v_th", constants.v_th);
  put_d("constants.v_t", constants.v_t);
  put_d("constants.n_swing", constants.n_swing);
  put_d("constants.v_pp", constants.v_pp);
  put_d("constants.k_couple", constants.k_couple);
  put_d("constants.k_prefactor_a", constants.k_prefactor);
  return e;
}

RunConfig resolve_config(const std::string& command, const ConfigDoc& doc,
                         const FlagOverrides& flags) {
  RunConfig cfg;
  cfg.command = command;

  // Known (section, key) table; anything else is rejected.
  static const std::map<std::string, std::set<std::string>> kKnown = {
      {"run", {"profile", "mechanism", "pattern", "n", "seed", "out"}},
      {"stress", {"hc_budget", "time_budget_s", "t_aggon_s", "f_rd_hz"}},
      {"retention", {"t0_s", "refine_rel_width"}},
      {"extract", {"source", "n_target", "hc_init"}},
      {"analyze", {"profiles", "mechanisms", "m_010", "source"}},
      {"report", {"source"}},
      {"sampling",
       {"distribution", "rho", "noise_lo_v", "noise_hi_v", "c_s_f"}},
      {"constants",
       {"v_dd", "v_flip", "v_sa", "alpha", "v_th", "v_t", "n_swing", "v_pp",
        "k_couple", "k_prefactor_a"}},
      {"custom_profile",
       {"mechanism", "r_s_lo", "r_s_hi", "r_b_lo", "r_b_hi", "r_s_noise_lo",
        "r_s_noise_hi"}},
  };
  for (const auto& [section, entries] : doc) {
    const auto known = kKnown.find(section);
    if (known == kKnown.end())
      throw ConfigError("unknown config section [" + section + "]");
    for (const auto& [key, value] : entries)
      if (!known->second.count(key))
        throw ConfigError("unknown key '" + key + "' in section [" + section +
                          "]");
  }

  const auto get = [&](const char* section,
                       const char* key) -> std::optional<std::string> {
    const auto s = doc.find(section);
    if (s == doc.end()) return std::nullopt;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    return k->second;
  };

  // [run]
  if (auto v = get("run", "profile")) cfg.profile = *v;
  if (auto v = get("run", "mechanism"))
    cfg.mechanism = parse_mechanism("[run] mechanism", *v);
  std::optional<std::string> pattern_text;
  if (auto v = get("run", "pattern")) pattern_text = *v;
  if (auto v = get("run", "n")) cfg.n = to_u64("run", "n", *v);
  if (auto v = get("run", "seed")) cfg.seed = to_u64("run", "seed", *v);
  if (auto v = get("run", "out")) cfg.out = *v;

  // [stress]
  if (auto v = get("stress", "hc_budget"))
    cfg.hc_budget = to_u64("stress", "hc_budget", *v);
  if (auto v = get("stress", "time_budget_s"))
    cfg.time_budget_s = to_double("stress", "time_budget_s", *v);
  if (auto v = get("stress", "t_aggon_s"))
    cfg.t_aggon_s = to_double("stress", "t_aggon_s", *v);
  if (auto v = get("stress", "f_rd_hz"))
    cfg.f_rd_hz = to_double("stress", "f_rd_hz", *v);

  // [retention]
  if (auto v = get("retention", "t0_s"))
    cfg.retention_t0_s = to_double("retention", "t0_s", *v);
  if (auto v = get("retention", "refine_rel_width"))
    cfg.refine_rel_width = to_double("retention", "refine_rel_width", *v);

  // [extract]
  if (auto v = get("extract", "source")) cfg.extract_source = *v;
  if (auto v = get("extract", "n_target"))
    cfg.n_target = to_u64("extract", "n_target", *v);
  if (auto v = get("extract", "hc_init"))
    cfg.hc_init = to_u64("extract", "hc_init", *v);

  // [analyze]
  if (auto v = get("analyze", "profiles")) {
    cfg.analyze_profiles = split_list(*v);
    if (cfg.analyze_profiles.size() == 1 && cfg.analyze_profiles[0] == "all")
      cfg.analyze_profiles = {"D1", "D2", "D3", "D4", "D5", "D6", "D7"};
  }
  if (auto v = get("analyze", "mechanisms"))
    for (const auto& m : split_list(*v))
      cfg.analyze_mechanisms.push_back(
          parse_mechanism("[analyze] mechanisms", m));
  if (auto v = get("analyze", "m_010"))
    cfg.m_010 = to_u64("analyze", "m_010", *v);
  if (auto v = get("analyze", "source")) cfg.analyze_source = *v;

  // [report]
  if (auto v = get("report", "source")) cfg.report_source = *v;

  // [sampling]
  if (auto v = get("sampling", "distribution")) {
    if (*v == "log_uniform")
      cfg.sampling.distribution = RangeDistribution::LogUniform;
    else if (*v == "log_normal")
      cfg.sampling.distribution = RangeDistribution::LogNormalClipped;
    else
      throw ConfigError("[sampling] distribution: expected log_uniform|log_normal");
  }
  if (auto v = get("sampling", "rho"))
    cfg.sampling.rho = to_double("sampling", "rho", *v);
  if (auto v = get("sampling", "noise_lo_v"))
    cfg.sampling.noise_lo_v = to_double("sampling", "noise_lo_v", *v);
  if (auto v = get("sampling", "noise_hi_v"))
    cfg.sampling.noise_hi_v = to_double("sampling", "noise_hi_v", *v);
  if (auto v = get("sampling", "c_s_f"))
    cfg.sampling.c_s = to_double("sampling", "c_s_f", *v);

  // [constants]
  if (auto v = get("constants", "v_dd"))
    cfg.constants.vdd = to_double("constants", "v_dd", *v);
  if (auto v = get("constants", "v_flip"))
    cfg.constants.v_flip = to_double("constants", "v_flip", *v);
  if (auto v = get("constants", "v_sa"))
    cfg.constants.v_sa = to_double("constants", "v_sa", *v);
  if (auto v = get("constants", "alpha"))
    cfg.constants.alpha = to_double("constants", "alpha", *v);
  if (auto v = get("constants", "v_th"))
    cfg.constants.v_th = to_double("constants", "v_th", *v);
  if (auto v = get("constants", "v_t"))
    cfg.constants.v_t = to_double("constants", "v_t", *v);
  if (auto v = get("constants", "n_swing"))
    cfg.constants.n_swing = to_double("constants", "n_swing", *v);
  if (auto v = get("constants", "v_pp"))
    cfg.constants.v_pp = to_double("constants", "v_pp", *v);
  if (auto v = get("constants", "k_couple"))
    cfg.constants.k_couple = to_double("constants", "k_couple", *v);
  if (auto v = get("constants", "k_prefactor_a"))
    cfg.constants.k_prefactor = to_double("constants", "k_prefactor_a", *v);

  // [custom_profile]
  if (doc.count("custom_profile")) {
    DeviceProfile p;
    p.dimm = "custom";
    const auto req = [&](const char* key) {
      const auto v = get("custom_profile", key);
      if (!v) throw ConfigError(std::string("[custom_profile] missing ") + key);
      return to_double("custom_profile", key, *v);
    };
    const auto mech = get("custom_profile", "mechanism");
    if (!mech) throw ConfigError("[custom_profile] missing mechanism");
    p.mechanism = parse_mechanism("[custom_profile] mechanism", *mech);
    p.r_s_range = {req("r_s_lo"), req("r_s_hi")};
    if (is_disturbance(p.mechanism)) {
      p.r_b_range = std::make_pair(req("r_b_lo"), req("r_b_hi"));
    } else if (get("custom_profile", "r_s_noise_lo")) {
      p.r_s_noise_range =
          std::make_pair(req("r_s_noise_lo"), req("r_s_noise_hi"));
    }
    cfg.custom_profile = p;
  }

  // flag overrides
  if (flags.profile) cfg.profile = *flags.profile;
  if (flags.mechanism)
    cfg.mechanism = parse_mechanism("--mechanism", *flags.mechanism);
  if (flags.pattern) pattern_text = *flags.pattern;
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.out) cfg.out = *flags.out;
  if (flags.n) cfg.n = *flags.n;
  if (flags.in) {
    if (command == "extract") cfg.extract_source = *flags.in;
    if (command == "analyze") cfg.analyze_source = *flags.in;
    if (command == "report") cfg.report_source = *flags.in;
  }

  // pattern defaults follow the mechanism
  if (pattern_text) {
    if (*pattern_text == "both") {
      if (!is_disturbance(cfg.mechanism))
        throw ConfigError("pattern 'both' applies to disturbance mechanisms");
      cfg.pattern_both = true;
      cfg.pattern = PatternClass::P010;
    } else {
      const auto p = pattern_from_string(*pattern_text);
      if (!p)
        throw ConfigError("unknown pattern '" + *pattern_text +
                          "' (111|010|all1|checker|both)");
      cfg.pattern = *p;
    }
  } else {
    cfg.pattern = is_disturbance(cfg.mechanism) ? PatternClass::P010
                                                : PatternClass::AllOnes;
  }

  if (cfg.analyze_profiles.empty()) cfg.analyze_profiles = {cfg.profile};
  if (cfg.analyze_mechanisms.empty())
    cfg.analyze_mechanisms = {cfg.mechanism};

  // cross-field validation
  try {
    validate(cfg.constants);
  } catch (const InvalidParameter& e) {
    throw ConfigError(std::string("[constants] invalid: ") + e.what());
  }
  if (is_disturbance(cfg.mechanism)) {
    if (cfg.pattern != PatternClass::P111 && cfg.pattern != PatternClass::P010)
      throw ConfigError("disturbance mechanisms use patterns 111|010|both");
  } else if (cfg.pattern != PatternClass::AllOnes &&
             cfg.pattern != PatternClass::Checkerboard) {
    throw ConfigError("retention uses patterns all1|checker");
  }
  if (!(cfg.sampling.c_s > 0.0))
    throw ConfigError("[sampling] c_s_f must be positive");
  if (!(cfg.sampling.rho >= -1.0 && cfg.sampling.rho <= 1.0))
    throw ConfigError("[sampling] rho must lie in [-1, 1]");
  if (cfg.sampling.noise_lo_v > cfg.sampling.noise_hi_v ||
      cfg.sampling.noise_hi_v > 0.0)
    throw ConfigError("[sampling] noise band must satisfy lo <= hi <= 0");
  if (!(cfg.time_budget_s > 0.0))
    throw ConfigError("[stress] time_budget_s must be positive");
  if (!(cfg.t_aggon_s > 0.0))
    throw ConfigError("[stress] t_aggon_s must be positive");
  if (cfg.f_rd_hz && !(*cfg.f_rd_hz > 0.0))
    throw ConfigError("[stress] f_rd_hz must be positive");
  if (cfg.hc_budget && *cfg.hc_budget == 0)
    throw ConfigError("[stress] hc_budget must be positive");
  if (!(cfg.retention_t0_s > 0.0) || cfg.retention_t0_s > cfg.time_budget_s)
    throw ConfigError("[retention] t0_s must satisfy 0 < t0 <= time_budget");
  if (cfg.refine_rel_width < 0.0)
    throw ConfigError("[retention] refine_rel_width must be >= 0");
  if (cfg.n_target < 1) throw ConfigError("[extract] n_target must be >= 1");
  if (cfg.hc_init < 1) throw ConfigError("[extract] hc_init must be >= 1");
  if (command == "report" && cfg.report_source.empty())
    throw ConfigError("report requires [report] source or --in");

  // profile existence check up-front for commands that sample
  if (command == "simulate" ||
      (command == "extract" && cfg.extract_source == "live")) {
    cfg.resolve_profile(cfg.profile, cfg.mechanism);
  }
  if (command == "analyze" && cfg.analyze_source == "sample") {
    for (const auto& d : cfg.analyze_profiles)
      for (const auto m : cfg.analyze_mechanisms) cfg.resolve_profile(d, m);
    if (cfg.m_010 > cfg.n)
      throw InfeasibleError("m_010 exceeds the population size n");
  }
  return cfg;
}

}  // namespace dramcell::cli
