#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dramcell/analyzer.hpp"
#include "dramcell/extraction.hpp"
#include "dramcell/observations.hpp"
#include "dramcell/profiles.hpp"
#include "dramcell/stress.hpp"
#include "dramcell/version.hpp"
#include "output.hpp"

namespace dramcell::cli {

namespace {

nlohmann::json manifest_for(const RunConfig& cfg,
                            const std::vector<std::string>& outputs) {
  nlohmann::json m;
  m["command"] = cfg.command;
  m["seed"] = cfg.seed;
  m["tool"] = {{"name", "dramcell"}, {"version", kVersion}};
  nlohmann::json echo;
  for (const auto& [k, v] : cfg.echo()) echo[k] = v;
  m["config"] = echo;
  m["outputs"] = outputs;
  return m;
}

std::vector<PatternClass> campaign_patterns(const RunConfig& cfg) {
  if (!cfg.pattern_both) return {cfg.pattern};
  if (is_disturbance(cfg.mechanism))
    return {PatternClass::P111, PatternClass::P010};
  return {PatternClass::AllOnes, PatternClass::Checkerboard};
}

SamplingOptions sampling_for(const RunConfig& cfg, PatternClass pattern) {
  SamplingOptions opts = cfg.sampling;
  opts.pattern = pattern;
  return opts;
}

std::string fmt_rb(double r_b) {
  return std::isinf(r_b) ? "inf" : format_double17(r_b);
}

struct ParsedExtraction {
  std::string dimm;
  ExtractionResult res;
};

// Reads back the disturbance extraction CSV written by cmd_extract.
std::vector<ParsedExtraction> parse_extraction_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open extraction file: " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw InputError(path.string() + ": empty file");
  const std::string expected =
      "cell_id,dimm,r_s_ohm,r_b_ohm,a_amp,t_111_s,t_010_s,hc_111,hc_010,"
      "quant_rel_err";
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected)
    throw InputError(path.string() + ": expected header '" + expected + "'");
  std::vector<ParsedExtraction> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) f.push_back(field);
    if (f.size() != 10)
      throw InputError(path.string() + ": line " + std::to_string(lineno) +
                       ": expected 10 columns");
    const auto num = [&](const std::string& s, const char* col) {
      if (s == "inf") return std::numeric_limits<double>::infinity();
      double v = 0.0;
      const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw InputError(path.string() + ": line " + std::to_string(lineno) +
                         ": bad " + col);
      return v;
    };
    ParsedExtraction row;
    row.dimm = f[1];
    row.res.r_s_est = num(f[2], "r_s_ohm");
    row.res.r_b_est = num(f[3], "r_b_ohm");
    row.res.a_est = num(f[4], "a_amp");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

int cmd_simulate(const RunConfig& cfg) {
  const DeviceProfile profile =
      cfg.resolve_profile(cfg.profile, cfg.mechanism);
  std::vector<ObservationRecord> records;
  for (const PatternClass pattern : campaign_patterns(cfg)) {
    const StressSpec stress = cfg.stress_for(cfg.mechanism, pattern);
    const FlipMap map = simulate_array(profile, cfg.n, stress, cfg.seed,
                                       cfg.constants,
                                       sampling_for(cfg, pattern));
    for (const auto& obs : map.observations)
      records.push_back({profile.dimm, obs});
  }

  std::string csv = std::string(kObservationsHeader) + "\n";
  for (const auto& rec : records) csv += format_observation(rec) + "\n";

  OutputDir out(cfg.out);
  out.write_text("observations.csv", csv);
  out.write_json("manifest.json",
                 manifest_for(cfg, {"observations.csv", "manifest.json"}));
  out.commit();
  return kExitOk;
}

namespace {

int extract_disturbance(const RunConfig& cfg, OutputDir& out) {
  const StressSpec stress = cfg.stress_for(cfg.mechanism, cfg.pattern);
  struct Item {
    std::string dimm;
    std::uint64_t cell_id;
    std::optional<ExtractionResult> res;
  };
  std::vector<Item> items;

  if (cfg.extract_source == "live") {
    const auto profile = cfg.resolve_profile(cfg.profile, cfg.mechanism);
    const auto pop = sample_population(profile, cfg.n, cfg.seed, cfg.constants,
                                       sampling_for(cfg, cfg.pattern));
    for (std::size_t i = 0; i < pop.cells.size(); ++i) {
      SimDisturbanceProbe probe({pop.cells[i]}, stress, cfg.constants);
      Item item{profile.dimm, i, std::nullopt};
      try {
        item.res = extract_rs_rb_disturbance(probe, stress, cfg.n_target,
                                             cfg.constants, cfg.sampling.c_s,
                                             cfg.hc_init);
      } catch (const HcNotReached&) {
      }
      items.push_back(std::move(item));
    }
  } else {
    const auto records = load_observations(cfg.extract_source);
    struct Pair {
      std::string dimm;
      std::optional<std::uint64_t> hc_111, hc_010;
      bool any_111 = false, any_010 = false;
    };
    std::map<std::uint64_t, Pair> by_cell;
    for (const auto& rec : records) {
      if (rec.obs.mechanism != cfg.mechanism)
        throw InputError("observation mechanism '" +
                         std::string(to_string(rec.obs.mechanism)) +
                         "' does not match configured '" +
                         to_string(cfg.mechanism) + "'");
      auto& pair = by_cell[rec.obs.cell_id];
      pair.dimm = rec.dimm;
      if (rec.obs.pattern == PatternClass::P111) {
        pair.any_111 = true;
        pair.hc_111 = rec.obs.flip_hc;
      } else if (rec.obs.pattern == PatternClass::P010) {
        pair.any_010 = true;
        pair.hc_010 = rec.obs.flip_hc;
      } else {
        throw InputError("retention pattern row in a disturbance extraction");
      }
    }
    for (const auto& [cell_id, pair] : by_cell) {
      if (!pair.any_111 || !pair.any_010)
        throw InputError("cell " + std::to_string(cell_id) +
                         ": needs one 111 row and one 010 row");
      TraceDisturbanceProbe probe(pair.hc_111, pair.hc_010);
      Item item{pair.dimm, cell_id, std::nullopt};
      try {
        item.res = extract_rs_rb_disturbance(probe, stress, 1, cfg.constants,
                                             cfg.sampling.c_s, cfg.hc_init);
      } catch (const HcNotReached&) {
      }
      items.push_back(std::move(item));
    }
  }

  std::string csv =
      "cell_id,dimm,r_s_ohm,r_b_ohm,a_amp,t_111_s,t_010_s,hc_111,hc_010,"
      "quant_rel_err\n";
  std::size_t extracted = 0, no_branch = 0;
  double rs_min = 0, rs_max = 0, rb_min = 0, rb_max = 0, a_min = 0, a_max = 0;
  for (const auto& item : items) {
    if (!item.res) continue;
    const auto& r = *item.res;
    csv += std::to_string(item.cell_id) + ',' + item.dimm + ',' +
           format_double17(r.r_s_est) + ',' + fmt_rb(r.r_b_est) + ',' +
           format_double17(r.a_est) + ',' + format_double17(r.t_111) + ',' +
           format_double17(r.t_010) + ',' + std::to_string(r.hc_111) + ',' +
           std::to_string(r.hc_010) + ',' +
           format_double17(r.quantization_rel_err) + "\n";
    if (extracted == 0 || r.r_s_est < rs_min) rs_min = r.r_s_est;
    if (extracted == 0 || r.r_s_est > rs_max) rs_max = r.r_s_est;
    if (r.a_est > 0.0) {
      if (no_branch == extracted || r.r_b_est < rb_min) rb_min = r.r_b_est;
      if (no_branch == extracted || r.r_b_est > rb_max) rb_max = r.r_b_est;
      if (no_branch == extracted || r.a_est < a_min) a_min = r.a_est;
      if (no_branch == extracted || r.a_est > a_max) a_max = r.a_est;
    } else {
      ++no_branch;
    }
    ++extracted;
  }

  nlohmann::json summary;
  summary["mechanism"] = to_string(cfg.mechanism);
  summary["n_cells"] = items.size();
  summary["n_extracted"] = extracted;
  summary["not_reached_count"] = items.size() - extracted;
  summary["no_bitline_branch_count"] = no_branch;
  if (extracted > 0) {
    summary["r_s_min_ohm"] = rs_min;
    summary["r_s_max_ohm"] = rs_max;
  }
  if (extracted > no_branch) {
    summary["r_b_min_ohm"] = rb_min;
    summary["r_b_max_ohm"] = rb_max;
    summary["a_min_amp"] = a_min;
    summary["a_max_amp"] = a_max;
  }

  out.write_text("extraction.csv", csv);
  out.write_json("summary.json", summary);
  return kExitOk;
}

int extract_retention(const RunConfig& cfg, OutputDir& out) {
  const auto schedule =
      default_retention_schedule(cfg.retention_t0_s, cfg.time_budget_s);
  struct Item {
    std::string dimm;
    std::uint64_t cell_id;
    RetentionEstimate est;
  };
  std::vector<Item> items;

  if (cfg.extract_source == "live") {
    const auto profile = cfg.resolve_profile(cfg.profile, cfg.mechanism);
    const auto pop = sample_population(profile, cfg.n, cfg.seed, cfg.constants,
                                       sampling_for(cfg, cfg.pattern));
    for (std::size_t i = 0; i < pop.cells.size(); ++i) {
      SimRetentionProbe probe(pop.cells[i], cfg.constants);
      items.push_back({profile.dimm, i,
                       extract_rs_retention(probe, cfg.pattern, schedule,
                                            cfg.constants, cfg.sampling.c_s,
                                            cfg.refine_rel_width)});
    }
  } else {
    const auto records = load_observations(cfg.extract_source);
    const double scale =
        1.0 / (cfg.sampling.c_s * std::log(cfg.constants.vdd / cfg.constants.v_flip));
    for (const auto& rec : records) {
      if (rec.obs.mechanism != cfg.mechanism)
        throw InputError("observation mechanism '" +
                         std::string(to_string(rec.obs.mechanism)) +
                         "' does not match configured '" +
                         to_string(cfg.mechanism) + "'");
      if (rec.obs.pattern != cfg.pattern) continue;  // other campaign
      RetentionEstimate est;
      if (rec.obs.flipped && rec.obs.bracket) {
        est.t_lo = rec.obs.bracket->first;
        est.t_hi = rec.obs.bracket->second;
        est.r_s_est = est.t_hi * scale;
      } else {
        // unflipped within the recorded budget: censored lower bound
        est.censored = true;
        est.t_lo = est.t_hi = cfg.time_budget_s;
        est.r_s_est = cfg.time_budget_s * scale;
      }
      items.push_back({rec.dimm, rec.obs.cell_id, est});
    }
  }

  std::string csv = "cell_id,dimm,r_s_ohm,censored,t_lo_s,t_hi_s\n";
  std::size_t censored = 0;
  double rs_min = 0, rs_max = 0;
  std::size_t n_ok = 0;
  for (const auto& item : items) {
    csv += std::to_string(item.cell_id) + ',' + item.dimm + ',' +
           format_double17(item.est.r_s_est) + ',' +
           (item.est.censored ? "1" : "0") + ',' +
           format_double17(item.est.t_lo) + ',' +
           format_double17(item.est.t_hi) + "\n";
    if (item.est.censored) {
      ++censored;
      continue;
    }
    if (n_ok == 0 || item.est.r_s_est < rs_min) rs_min = item.est.r_s_est;
    if (n_ok == 0 || item.est.r_s_est > rs_max) rs_max = item.est.r_s_est;
    ++n_ok;
  }

  nlohmann::json summary;
  summary["mechanism"] = to_string(cfg.mechanism);
  summary["pattern"] = to_string(cfg.pattern);
  summary["n_cells"] = items.size();
  summary["n_extracted"] = n_ok;
  summary["censored_count"] = censored;
  if (n_ok > 0) {
    summary["r_s_min_ohm"] = rs_min;
    summary["r_s_max_ohm"] = rs_max;
  }

  out.write_text("extraction.csv", csv);
  out.write_json("summary.json", summary);
  return kExitOk;
}

}  // namespace

int cmd_extract(const RunConfig& cfg) {
  OutputDir out(cfg.out);
  const int rc = is_disturbance(cfg.mechanism) ? extract_disturbance(cfg, out)
                                               : extract_retention(cfg, out);
  auto names = out.names();
  names.push_back("manifest.json");
  out.write_json("manifest.json", manifest_for(cfg, names));
  out.commit();
  return rc;
}

int cmd_analyze(const RunConfig& cfg) {
  struct Population {
    std::string dimm;
    Mechanism mechanism;
    std::vector<CellParams> cells;
  };
  std::vector<Population> populations;

  if (cfg.analyze_source == "sample") {
    for (const auto& dimm : cfg.analyze_profiles) {
      for (const Mechanism mech : cfg.analyze_mechanisms) {
        const auto profile = cfg.resolve_profile(dimm, mech);
        auto pop = sample_population(profile, cfg.n, cfg.seed, cfg.constants,
                                     sampling_for(cfg, PatternClass::P010));
        populations.push_back({dimm, mech, std::move(pop.cells)});
      }
    }
  } else {
    const auto rows = parse_extraction_csv(cfg.analyze_source);
    Population pop;
    pop.dimm = rows.empty() ? "custom" : rows.front().dimm;
    pop.mechanism = cfg.mechanism;
    for (const auto& row : rows) {
      CellParams cell;
      cell.r_s = row.res.r_s_est;
      cell.a = row.res.a_est;
      cell.c_s = cfg.sampling.c_s;
      pop.cells.push_back(cell);
    }
    populations.push_back(std::move(pop));
  }

  std::string scores_csv =
      "dimm,mechanism,cell_id,r_s_ohm,r_b_ohm,g_111_s,g_010_s,delta_g_s,"
      "delta_g_rel,tau_111_s,tau_010_s\n";
  std::string plot_csv = "dimm,mechanism,pattern,metric,value\n";
  nlohmann::json medians = nlohmann::json::array();
  nlohmann::json accuracy = nlohmann::json::array();

  for (const auto& pop : populations) {
    if (pop.cells.empty())
      throw InfeasibleError("analysis population is empty");
    if (is_disturbance(pop.mechanism) && cfg.m_010 > pop.cells.size())
      throw InfeasibleError("m_010 exceeds the population size");

    const char* mech_name = to_string(pop.mechanism);
    AttackReport report;
    if (is_disturbance(pop.mechanism)) {
      const StressSpec stress = cfg.stress_for(pop.mechanism, PatternClass::P010);
      report = confidentiality_budget(pop.cells, stress, cfg.m_010,
                                      cfg.constants);
    } else {
      report.scores = score_population(pop.cells, cfg.constants);
      report.medians = population_medians(report.scores);
      for (const auto& cell : pop.cells)
        if (inference_window(cell, cfg.constants))
          ++report.inference_window_count;
    }

    for (std::size_t i = 0; i < report.scores.size(); ++i) {
      const auto& s = report.scores[i];
      scores_csv += pop.dimm + ',' + mech_name + ',' + std::to_string(s.cell_id) +
                    ',' + format_double17(pop.cells[i].r_s) + ',' +
                    fmt_rb(r_b_from_factor(pop.cells[i].a, cfg.constants)) +
                    ',' + format_double17(s.g_111) + ',' +
                    format_double17(s.g_010) + ',' + format_double17(s.delta_g) +
                    ',' + format_double17(s.delta_g_rel) + ',' +
                    format_double17(s.tau_111) + ',' +
                    format_double17(s.tau_010) + "\n";
    }

    nlohmann::json med;
    med["dimm"] = pop.dimm;
    med["mechanism"] = mech_name;
    med["n"] = pop.cells.size();
    med["g_111_s"] = report.medians.g_111;
    med["g_010_s"] = report.medians.g_010;
    med["delta_g_s"] = report.medians.delta_g;
    med["delta_g_rel"] = report.medians.delta_g_rel;
    med["tau_111_s"] = report.medians.tau_111;
    med["tau_010_s"] = report.medians.tau_010;
    med["inference_window_count"] = report.inference_window_count;
    medians.push_back(med);

    const auto plot_row = [&](const char* pattern, const char* metric,
                              double value) {
      plot_csv += pop.dimm + ',' + mech_name + ',' + pattern + ',' + metric +
                  ',' + format_double17(value) + "\n";
    };
    plot_row("111", "median_g_tot_s", report.medians.g_111);
    plot_row("010", "median_g_tot_s", report.medians.g_010);
    plot_row("010", "median_delta_g_s", report.medians.delta_g);
    plot_row("010", "median_delta_g_rel", report.medians.delta_g_rel);
    plot_row("111", "median_tau_s", report.medians.tau_111);
    plot_row("010", "median_tau_s", report.medians.tau_010);

    if (is_disturbance(pop.mechanism)) {
      nlohmann::json acc;
      acc["dimm"] = pop.dimm;
      acc["mechanism"] = mech_name;
      acc["m_010_requested"] = report.m_010_requested;
      acc["m_010_achieved"] = report.m_010;
      acc["m_111"] = report.m_111;
      acc["hc_budget"] = report.hc_budget;
      acc["acc"] = report.acc;
      acc["feasible"] = report.feasible;
      accuracy.push_back(acc);
      plot_row("010", "acc", report.acc);
    }
  }

  OutputDir out(cfg.out);
  out.write_text("cellscores.csv", scores_csv);
  out.write_json("medians.json", nlohmann::json{{"populations", medians}});
  out.write_json("accuracy.json", nlohmann::json{{"m_010", cfg.m_010},
                                                 {"populations", accuracy}});
  out.write_text("plot_long.csv", plot_csv);
  out.write_json("manifest.json",
                 manifest_for(cfg, {"cellscores.csv", "medians.json",
                                    "accuracy.json", "plot_long.csv",
                                    "manifest.json"}));
  out.commit();
  return kExitOk;
}

int cmd_report(const RunConfig& cfg) {
  const std::filesystem::path src = cfg.report_source;
  const auto medians_path = src / "medians.json";
  const auto accuracy_path = src / "accuracy.json";
  std::string missing;
  for (const auto& p : {medians_path, accuracy_path})
    if (!std::filesystem::exists(p)) missing += "\n  " + p.string();
  if (!missing.empty())
    throw InputError("missing analyze outputs, expected:" + missing);

  nlohmann::json medians, accuracy;
  try {
    std::ifstream(medians_path) >> medians;
    std::ifstream(accuracy_path) >> accuracy;
  } catch (const std::exception& e) {
    throw InputError(std::string("cannot parse analyze outputs: ") + e.what());
  }

  struct Entry {
    double r_s_med = 0.0;
    double r_b_med = std::numeric_limits<double>::infinity();
    double g111 = 0.0, g010 = 0.0, dg_rel = 0.0;
    std::size_t windows = 0;
    bool present = false;
  };
  std::map<std::string, std::map<std::string, Entry>> table;  // dimm -> mech
  for (const auto& m : medians["populations"]) {
    Entry e;
    e.g111 = m["g_111_s"].get<double>();
    e.g010 = m["g_010_s"].get<double>();
    e.dg_rel = m["delta_g_rel"].get<double>();
    const double dg = m["delta_g_s"].get<double>();
    e.r_s_med = e.g111 > 0.0 ? 1.0 / e.g111 : 0.0;
    if (dg > 0.0) e.r_b_med = 1.0 / dg;
    e.windows = m["inference_window_count"].get<std::size_t>();
    e.present = true;
    table[m["dimm"].get<std::string>()][m["mechanism"].get<std::string>()] = e;
  }

  std::map<std::string, std::map<std::string, nlohmann::json>> acc;
  for (const auto& a : accuracy["populations"])
    acc[a["dimm"].get<std::string>()][a["mechanism"].get<std::string>()] = a;

  std::ostringstream md;
  md << "# DRAM cell attack-surface report\n\n";

  md << "## Mechanism observations (median R_S and R_B per DIMM)\n\n";
  md << "| DIMM | med R_S RH [ohm] | med R_S RP [ohm] | R_S(RP)>R_S(RH) | "
        "med R_B RH [ohm] | med R_B RP [ohm] | R_B(RP)<R_B(RH) |\n";
  md << "|---|---|---|---|---|---|---|\n";
  for (const auto& [dimm, mechs] : table) {
    const auto rh = mechs.find("rowhammer");
    const auto rp = mechs.find("rowpress");
    if (rh == mechs.end() && rp == mechs.end()) continue;
    md << "| " << dimm << " | ";
    const auto cell = [&](const std::map<std::string, Entry>& m,
                          const char* k, auto proj) -> std::string {
      const auto it = m.find(k);
      if (it == m.end()) return "n/a";
      const double v = proj(it->second);
      return std::isinf(v) ? "inf" : format_double6(v);
    };
    md << cell(mechs, "rowhammer", [](const Entry& e) { return e.r_s_med; })
       << " | "
       << cell(mechs, "rowpress", [](const Entry& e) { return e.r_s_med; })
       << " | ";
    if (rh != mechs.end() && rp != mechs.end())
      md << (rp->second.r_s_med > rh->second.r_s_med ? "pass" : "FAIL");
    else
      md << "n/a";
    md << " | "
       << cell(mechs, "rowhammer", [](const Entry& e) { return e.r_b_med; })
       << " | "
       << cell(mechs, "rowpress", [](const Entry& e) { return e.r_b_med; })
       << " | ";
    if (rh != mechs.end() && rp != mechs.end())
      md << (rp->second.r_b_med < rh->second.r_b_med ? "pass" : "FAIL");
    else
      md << "n/a";
    md << " |\n";
  }

  md << "\n## Integrity metrics (median conductances)\n\n";
  md << "| DIMM | G_tot 111 RH | G_tot 111 RP | RH>RP | G_tot 010 RH | "
        "G_tot 010 RP | RP>RH | dG_rel RH | dG_rel RP | RP>RH |\n";
  md << "|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& [dimm, mechs] : table) {
    const auto rh = mechs.find("rowhammer");
    const auto rp = mechs.find("rowpress");
    if (rh == mechs.end() || rp == mechs.end()) continue;
    md << "| " << dimm << " | " << format_double6(rh->second.g111) << " | "
       << format_double6(rp->second.g111) << " | "
       << (rh->second.g111 > rp->second.g111 ? "pass" : "FAIL") << " | "
       << format_double6(rh->second.g010) << " | "
       << format_double6(rp->second.g010) << " | "
       << (rp->second.g010 > rh->second.g010 ? "pass" : "FAIL") << " | "
       << format_double6(rh->second.dg_rel) << " | "
       << format_double6(rp->second.dg_rel) << " | "
       << (rp->second.dg_rel > rh->second.dg_rel ? "pass" : "FAIL") << " |\n";
  }

  md << "\n## Confidentiality inference accuracy (m_010 = "
     << accuracy["m_010"].get<std::size_t>() << ")\n\n";
  md << "| DIMM | Acc RH | Acc RP | RP>=RH | feasible |\n";
  md << "|---|---|---|---|---|\n";
  for (const auto& [dimm, mechs] : acc) {
    const auto rh = mechs.find("rowhammer");
    const auto rp = mechs.find("rowpress");
    md << "| " << dimm << " | "
       << (rh != mechs.end() ? format_double6(rh->second["acc"].get<double>())
                             : "n/a")
       << " | "
       << (rp != mechs.end() ? format_double6(rp->second["acc"].get<double>())
                             : "n/a")
       << " | ";
    if (rh != mechs.end() && rp != mechs.end())
      md << (rp->second["acc"].get<double>() >=
                     rh->second["acc"].get<double>()
                 ? "pass"
                 : "FAIL");
    else
      md << "n/a";
    md << " | ";
    bool feasible = true;
    for (const auto& [mech, a] : mechs) feasible &= a["feasible"].get<bool>();
    md << (feasible ? "yes" : "no") << " |\n";
  }

  md << "\n## Separable inference windows\n\n";
  md << "| DIMM | mechanism | cells with tau_010 < tau_111 |\n|---|---|---|\n";
  for (const auto& [dimm, mechs] : table)
    for (const auto& [mech, e] : mechs)
      md << "| " << dimm << " | " << mech << " | " << e.windows << " |\n";

  const std::string text = md.str();
  std::cout << text;
  OutputDir out(cfg.out);
  out.write_text("report.md", text);
  out.write_json("manifest.json",
                 manifest_for(cfg, {"report.md", "manifest.json"}));
  out.commit();
  return kExitOk;
}

}  // namespace dramcell::cli
