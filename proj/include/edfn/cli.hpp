#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "edfn/blowup.hpp"
#include "edfn/distoracle.hpp"
#include "edfn/embed.hpp"
#include "edfn/enumerate.hpp"
#include "edfn/envelope.hpp"
#include "edfn/solver.hpp"
#include "json.hpp"

namespace edfn {

/// Bad command line or unreadable input file; maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

namespace cli {

inline std::string read_file(const std::string& path, const std::string& what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(what + ": cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json read_json(const std::string& path, const std::string& what) {
  try {
    return nlohmann::json::parse(read_file(path, what));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(what + " '" + path + "': " + e.what(), e.byte);
  }
}

inline FamilySpec read_spec(const std::string& path) { return family_from_json(read_json(path, "--spec")); }

inline Crg read_crg(const std::string& path) {
  try {
    return crg_from_text(read_file(path, "--crg"));
  } catch (const ParseError& e) {
    throw ParseError(std::string("--crg: ") + e.what(), e.offset());
  }
}

inline PValue read_p(const std::string& text, bool exact, const std::string& flag = "--p") {
  PValue p;
  try {
    p = PValue::parse(text);
  } catch (const ParseError& e) {
    throw ParseError(flag + ": " + e.what(), e.offset());
  }
  if (exact && !p.is_rational()) throw UsageError(flag + ": --exact requires a rational value such as 1/4, got '" + text + "'");
  return p;
}

inline std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::vector<PValue> read_p_list(const std::string& text, bool exact, const std::string& flag) {
  std::vector<PValue> out;
  for (const auto& s : split(text)) out.push_back(read_p(s, exact, flag));
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

inline std::vector<std::size_t> read_size_list(const std::string& text, const std::string& flag) {
  std::vector<std::size_t> out;
  for (const auto& s : split(text)) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError(flag + ": '" + s + "' is not a nonnegative integer");
    out.push_back(std::stoul(s));
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

template <class T>
std::vector<T> as_grid(const std::vector<PValue>& ps) {
  std::vector<T> out;
  for (const auto& p : ps) out.push_back(Arith<T>::from(p));
  return out;
}

inline void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("--out: cannot write '" + path + "'");
  f << text;
}

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline std::string json_path_for(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  if (p.extension() == ".csv") return p.replace_extension(".json").string();
  return csv_path + ".json";
}

inline nlohmann::json spec_header(const FamilySpec& spec) {
  return {{"spec", family_to_json(spec)}, {"property_hash", family_hash(spec)}};
}

}  // namespace cli

/// Runs the command line; returns the process exit code (0 ok, 1 domain error, 2 usage error).
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using namespace cli;
  CLI::App app{"Edit-distance functions of hereditary properties via colored regularity graphs", "edfn"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  bool exact = false;
  std::string out_path;
  app.add_option("--threads", threads, "Worker threads (default: hardware count)");
  app.add_flag("--exact", exact, "Exact rational arithmetic");
  app.add_option("--out", out_path, "Output file (default: stdout)");

  std::string crg_path, p_text, spec_path, graph_text, catalog_path, json_path, side_text = "zero_core";
  std::string paths_text, approach_text, probes_text, ns_text = "100,1000,10000", p_list_text;
  std::size_t white = 2, black = 4, grid_points = 1024, max_total = 0, path_catalog_n = 0, dist_n = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "Worker threads");
    sub->add_flag("--exact", exact, "Exact rational arithmetic");
    sub->add_option("--out", out_path, "Output file (default: stdout)");
  };
  auto bounds = [&](CLI::App* sub) {
    sub->add_option("--white", white, "Catalog bound on white vertices")->capture_default_str();
    sub->add_option("--black", black, "Catalog bound on black vertices")->capture_default_str();
  };

  auto* g_value = app.add_subcommand("g-value", "g_K(p) with minimizers");
  g_value->add_option("--crg", crg_path, "CRG text file")->required();
  g_value->add_option("--p", p_text, "Density p (num/den or decimal)")->required();
  common(g_value);

  auto* core_check = app.add_subcommand("core-check", "Is K p-core?");
  core_check->add_option("--crg", crg_path, "CRG text file")->required();
  core_check->add_option("--p", p_text, "Density p in (0,1)")->required();
  common(core_check);

  auto* embed_cmd = app.add_subcommand("embed", "Decide F -> K (graph) or family -> K (spec)");
  embed_cmd->add_option("--graph", graph_text, "graph6 string of F");
  embed_cmd->add_option("--spec", spec_path, "Property spec JSON");
  embed_cmd->add_option("--crg", crg_path, "CRG text file")->required();
  common(embed_cmd);

  auto* enumerate_cmd = app.add_subcommand("enumerate", "Catalog of F-free 0-core or 1-core CRGs");
  enumerate_cmd->add_option("--spec", spec_path, "Property spec JSON")->required();
  enumerate_cmd->add_option("--side", side_text, "zero_core or one_core")->capture_default_str();
  bounds(enumerate_cmd);
  common(enumerate_cmd);

  auto* envelope_cmd = app.add_subcommand("envelope", "Lower envelope of g_K(p) over a catalog");
  envelope_cmd->add_option("--spec", spec_path, "Property spec JSON");
  envelope_cmd->add_option("--catalog", catalog_path, "Catalog JSON (instead of --spec)");
  envelope_cmd->add_option("--grid", grid_points, "Number of uniform points on (0,1/2]")->capture_default_str();
  envelope_cmd->add_option("--json", json_path, "JSON curve file (default: next to --out)");
  bounds(envelope_cmd);
  common(envelope_cmd);

  auto* q_cmd = app.add_subcommand("q-curve", "Envelope over the chi(F)-1 white slice");
  q_cmd->add_option("--spec", spec_path, "Property spec JSON")->required();
  q_cmd->add_option("--grid", grid_points, "Number of uniform points on (0,1/2]")->capture_default_str();
  q_cmd->add_option("--p", p_list_text, "Explicit comma-separated p values (instead of --grid)");
  q_cmd->add_option("--json", json_path, "JSON curve file (default: next to --out)");
  common(q_cmd);

  auto* pathbound_cmd = app.add_subcommand("pathbound", "g(1/4) of white joins of gray paths");
  pathbound_cmd->add_option("--paths", paths_text, "Comma-separated path lengths, e.g. 4,2");
  pathbound_cmd->add_option("--max-total", max_total, "Check every composition with total length up to N");
  common(pathbound_cmd);

  auto* probe_cmd = app.add_subcommand("probe", "Attainers along a sequence approaching a target p");
  probe_cmd->add_option("--spec", spec_path, "Property spec JSON");
  probe_cmd->add_option("--path-catalog", path_catalog_n, "Use {K(1,0), P_1..P_N} instead of an enumerated catalog");
  probe_cmd->add_option("--target", p_text, "Target p")->required();
  probe_cmd->add_option("--approach", approach_text, "Comma-separated p values moving toward the target")->required();
  bounds(probe_cmd);
  common(probe_cmd);

  auto* symmetry_cmd = app.add_subcommand("symmetry", "Compare a catalog at p with its complement at 1-p");
  symmetry_cmd->add_option("--spec", spec_path, "Property spec JSON")->required();
  symmetry_cmd->add_option("--p", p_list_text, "Comma-separated p values")->required();
  bounds(symmetry_cmd);
  common(symmetry_cmd);

  auto* slope_cmd = app.add_subcommand("slope-demo", "envelope(p)/p next to 1/(chi(F)-1)");
  slope_cmd->add_option("--spec", spec_path, "Property spec JSON")->required();
  slope_cmd->add_option("--probes", probes_text, "Comma-separated small p values")->required();
  bounds(slope_cmd);
  common(slope_cmd);

  auto* dist_cmd = app.add_subcommand("dist-exact", "Exact edit distance by exhaustive search");
  dist_cmd->add_option("--spec", spec_path, "Property spec JSON")->required();
  dist_cmd->add_option("--graph", graph_text, "graph6 string of G (distance of one graph)");
  dist_cmd->add_option("--n", dist_n, "Vertex count (maximum over graphs at density --p)");
  dist_cmd->add_option("--p", p_text, "Density for --n");
  common(dist_cmd);

  auto* blowup_cmd = app.add_subcommand("blowup-degree", "Delta_p(K[mu,n])/|K[mu,n]| against g_K(p)");
  blowup_cmd->add_option("--crg", crg_path, "CRG text file")->required();
  blowup_cmd->add_option("--p", p_text, "Density p in (0,1)")->required();
  blowup_cmd->add_option("--n", ns_text, "Comma-separated blow-up sizes")->capture_default_str();
  common(blowup_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "edfn: " << e.what() << "\n";
    return 2;
  }

  try {
    default_threads() = threads;
    EnvelopeOptions eopt;
    eopt.threads = threads;

    if (g_value->parsed()) {
      Crg k = read_crg(crg_path);
      PValue p = read_p(p_text, exact);
      nlohmann::json j = exact ? to_json(solve_g<Rational>(k, p)) : to_json(solve_g<double>(k, p));
      j["crg"] = to_text(k);
      j["p"] = p.str();
      write_output(dump(j), out_path, out);
    } else if (core_check->parsed()) {
      Crg k = read_crg(crg_path);
      PValue p = read_p(p_text, exact);
      nlohmann::json j = exact ? to_json(core_record<Rational>(k, p.exact())) : to_json(core_record<double>(k, p.value()));
      j["crg"] = to_text(k);
      j["p"] = p.str();
      write_output(dump(j), out_path, out);
    } else if (embed_cmd->parsed()) {
      Crg k = read_crg(crg_path);
      if (graph_text.empty() == spec_path.empty()) throw UsageError("embed: give exactly one of --graph or --spec");
      nlohmann::json j;
      if (!graph_text.empty()) {
        SimpleGraph f = parse_graph6(graph_text);
        auto phi = find_embedding(f, k);
        j["embeds"] = phi.has_value();
        j["graph6"] = emit_graph6(f);
        j["witness"] = phi ? witness_json(*phi) : nlohmann::json(nullptr);
      } else {
        FamilySpec spec = read_spec(spec_path);
        j = to_json(family_embeds(spec, k));
        j.update(spec_header(spec));
      }
      j["crg"] = to_text(k);
      write_output(dump(j), out_path, out);
    } else if (enumerate_cmd->parsed()) {
      FamilySpec spec = read_spec(spec_path);
      Side side;
      try {
        side = side_from_string(side_text);
      } catch (const Error& e) {
        throw UsageError(std::string("--side: ") + e.what());
      }
      write_output(dump(to_json(cached_catalog(spec, white, black, side, {threads}))), out_path, out);
    } else if (envelope_cmd->parsed() || q_cmd->parsed()) {
      std::string csv, js;
      auto finish = [&](const auto& curve) {
        csv = to_csv(curve);
        js = dump(to_json(curve));
      };
      if (envelope_cmd->parsed()) {
        if (spec_path.empty() == catalog_path.empty()) throw UsageError("envelope: give exactly one of --spec or --catalog");
        Catalog cat = !spec_path.empty() ? cached_catalog(read_spec(spec_path), white, black, Side::ZeroCore, {threads})
                                         : catalog_from_json(read_json(catalog_path, "--catalog"));
        if (grid_points == 0) throw UsageError("--grid must be positive");
        if (exact) finish(envelope<Rational>(cat, default_grid<Rational>(grid_points), eopt));
        else finish(envelope<double>(cat, default_grid<double>(grid_points), eopt));
      } else {
        FamilySpec spec = read_spec(spec_path);
        if (exact) {
          auto grid = p_list_text.empty() ? default_grid<Rational>(grid_points) : as_grid<Rational>(read_p_list(p_list_text, true, "--p"));
          finish(q_curve<Rational>(spec, grid, eopt));
        } else {
          auto grid = p_list_text.empty() ? default_grid<double>(grid_points) : as_grid<double>(read_p_list(p_list_text, false, "--p"));
          finish(q_curve<double>(spec, grid, eopt));
        }
      }
      write_output(csv, out_path, out);
      std::string jp = !json_path.empty() ? json_path : (!out_path.empty() && out_path != "-" ? json_path_for(out_path) : "");
      if (!jp.empty()) write_output(js, jp, out);
    } else if (pathbound_cmd->parsed()) {
      std::vector<std::vector<std::size_t>> comps;
      if (!paths_text.empty()) comps.push_back(read_size_list(paths_text, "--paths"));
      if (max_total > 0) {
        auto all = path_compositions(max_total);
        comps.insert(comps.end(), all.begin(), all.end());
      }
      if (comps.empty()) throw UsageError("pathbound: give --paths or --max-total");
      nlohmann::json rows = nlohmann::json::array();
      bool all_ok = true;
      auto add = [&](const auto& r) {
        bool ok = r.exceeds_quarter && r.core_verified && Arith<std::decay_t<decltype(r.g)>>::near(r.identity_residual, decltype(r.g)(0));
        all_ok = all_ok && ok;
        rows.push_back({{"paths", r.lengths},
                        {"g", scalar_json(r.g)},
                        {"exceeds_quarter", r.exceeds_quarter},
                        {"core_support", r.core_support},
                        {"identity_residual", scalar_json(r.identity_residual)},
                        {"ok", ok}});
      };
      for (const auto& c : comps) {
        if (std::find(c.begin(), c.end(), std::size_t{0}) != c.end()) throw UsageError("--paths: lengths must be positive");
        if (exact) add(pathbound_check<Rational>(c));
        else add(pathbound_check<double>(c));
      }
      write_output(dump({{"p", "1/4"}, {"mode", exact ? "exact" : "float"}, {"all_ok", all_ok}, {"instances", rows}}), out_path, out);
    } else if (probe_cmd->parsed()) {
      if (spec_path.empty() == (path_catalog_n == 0)) throw UsageError("probe: give exactly one of --spec or --path-catalog");
      Catalog cat = path_catalog_n > 0 ? path_catalog(path_catalog_n)
                                       : cached_catalog(read_spec(spec_path), white, black, Side::ZeroCore, {threads});
      auto emit = [&](const auto& r) {
        nlohmann::json pts = nlohmann::json::array();
        for (std::size_t i = 0; i < r.approach.size(); ++i)
          pts.push_back({{"p", scalar_json(r.approach[i])},
                         {"value", scalar_json(r.value[i])},
                         {"attainers", r.attainers[i]},
                         {"attainer_size", r.attainer_size[i]}});
        nlohmann::json j = {{"target", scalar_json(r.target)},
                            {"points", pts},
                            {"stabilizes", r.stabilizes},
                            {"attainer_size_grows_toward_target", r.size_monotone_toward_target},
                            {"label", r.label},
                            {"property_hash", cat.property_hash},
                            {"bounds", {{"max_white", cat.max_white}, {"max_black", cat.max_black}}}};
        write_output(dump(j), out_path, out);
      };
      if (exact)
        emit(accumulation_probe<Rational>(cat, read_p(p_text, true, "--target").exact(), as_grid<Rational>(read_p_list(approach_text, true, "--approach")), eopt));
      else
        emit(accumulation_probe<double>(cat, read_p(p_text, false, "--target").value(), as_grid<double>(read_p_list(approach_text, false, "--approach")), eopt));
    } else if (symmetry_cmd->parsed()) {
      FamilySpec spec = read_spec(spec_path);
      auto emit = [&](const auto& r) {
        nlohmann::json j = spec_header(spec);
        j["bounds"] = {{"max_white", white}, {"max_black", black}};
        j["entries"] = r.entries;
        j["catalogs_match"] = r.catalogs_match;
        j["max_entry_residual"] = scalar_json(r.max_entry_residual);
        j["max_envelope_residual"] = scalar_json(r.max_envelope_residual);
        write_output(dump(j), out_path, out);
      };
      if (exact) emit(symmetry_check<Rational>(spec, white, black, as_grid<Rational>(read_p_list(p_list_text, true, "--p")), eopt));
      else emit(symmetry_check<double>(spec, white, black, as_grid<double>(read_p_list(p_list_text, false, "--p")), eopt));
    } else if (slope_cmd->parsed()) {
      FamilySpec spec = read_spec(spec_path);
      auto r = slope_at_zero_demo(spec, as_grid<double>(read_p_list(probes_text, false, "--probes")), white, black, eopt);
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& row : r.rows)
        rows.push_back({{"p", format_double(row.p)},
                        {"envelope", format_double(row.envelope)},
                        {"ratio", format_double(row.ratio)},
                        {"small_p_regime", row.small_p_regime}});
      nlohmann::json j = spec_header(spec);
      j["bounds"] = {{"max_white", white}, {"max_black", black}};
      j["chi"] = r.chi;
      j["target_ratio"] = format_double(r.target);
      j["rows"] = rows;
      j["note"] = r.note;
      write_output(dump(j), out_path, out);
    } else if (dist_cmd->parsed()) {
      FamilySpec spec = read_spec(spec_path);
      if (graph_text.empty() == (dist_n == 0)) throw UsageError("dist-exact: give exactly one of --graph or --n");
      nlohmann::json j = spec_header(spec);
      if (!graph_text.empty()) {
        SimpleGraph g = parse_graph6(graph_text);
        j["graph6"] = emit_graph6(g);
        j["n"] = g.size();
        j["dist"] = dist_to_property(g, spec).get_str();
      } else {
        if (p_text.empty()) throw UsageError("dist-exact: --n needs --p");
        j.update(to_json(max_dist_at_density(dist_n, read_p(p_text, false), spec)));
      }
      write_output(dump(j), out_path, out);
    } else if (blowup_cmd->parsed()) {
      Crg k = read_crg(crg_path);
      PValue p = read_p(p_text, exact);
      auto ns = read_size_list(ns_text, "--n");
      nlohmann::json j = exact ? to_json(blowup_degree_table<Rational>(k, p.exact(), ns)) : to_json(blowup_degree_table<double>(k, p.value(), ns));
      j["crg"] = to_text(k);
      j["p"] = p.str();
      write_output(dump(j), out_path, out);
    }
    return 0;
  } catch (const UsageError& e) {
    err << "edfn: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "edfn: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "edfn: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace edfn
