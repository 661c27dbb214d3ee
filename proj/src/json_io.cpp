#include "msp/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace msp {

using nlohmann::json;

nlohmann::json json_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return json::parse(buf);
}

json instance_to_json(const MatroidInstance& m) {
  json j;
  j["n"] = m.n;
  j["order"] = m.order.ranking;
  json dummies = json::array();
  for (int e = 0; e < m.n; ++e)
    if (m.is_dummy[e]) dummies.push_back(e);
  if (!dummies.empty()) j["dummies"] = dummies;
  switch (m.kind) {
    case MatroidKind::uniform:
      j["kind"] = "uniform";
      j["r"] = m.uniform_rank;
      break;
    case MatroidKind::laminar: {
      j["kind"] = "laminar";
      json sets = json::array();
      for (const auto& s : m.sets) sets.push_back({{"members", s.members}, {"cap", s.cap}});
      j["sets"] = sets;
      break;
    }
    case MatroidKind::rank2:
      j["kind"] = "rank2";
      j["classes"] = m.classes;
      break;
    case MatroidKind::graphic: {
      j["kind"] = "graphic";
      j["vertices"] = m.vertices;
      json edges = json::array();
      for (auto [u, v] : m.edges) edges.push_back({u, v});
      j["edges"] = edges;
      if (m.root >= 0) j["root"] = m.root;
      break;
    }
  }
  return j;
}

MatroidInstance instance_from_json(const json& j) {
  MatroidInstance m;
  std::string kind = j.at("kind").get<std::string>();
  m.n = j.at("n").get<int>();
  m.order = ValueOrder::from_ranking(j.at("order").get<std::vector<int>>());
  m.is_dummy.assign(m.n, 0);
  if (j.contains("dummies"))
    for (int e : j["dummies"].get<std::vector<int>>()) m.is_dummy.at(e) = 1;
  if (kind == "uniform") {
    m.kind = MatroidKind::uniform;
    m.uniform_rank = j.at("r").get<int>();
  } else if (kind == "laminar") {
    m.kind = MatroidKind::laminar;
    for (const auto& js : j.at("sets")) {
      LaminarSet s;
      s.members = js.at("members").get<std::vector<int>>();
      s.cap = js.at("cap").get<int>();
      m.sets.push_back(std::move(s));
    }
  } else if (kind == "rank2") {
    m.kind = MatroidKind::rank2;
    m.classes = j.at("classes").get<std::vector<std::vector<int>>>();
  } else if (kind == "graphic") {
    m.kind = MatroidKind::graphic;
    m.vertices = j.at("vertices").get<int>();
    for (const auto& je : j.at("edges"))
      m.edges.emplace_back(je.at(0).get<int>(), je.at(1).get<int>());
    if (j.contains("root")) m.root = j["root"].get<int>();
  } else {
    throw std::invalid_argument("unknown instance kind: " + kind);
  }
  auto violations = validate_instance(m);
  if (!violations.empty())
    throw std::invalid_argument("invalid instance: " + violations.front());
  return m;
}

MatroidInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  json j;
  in >> j;
  return instance_from_json(j);
}

void save_instance(const MatroidInstance& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << instance_to_json(m).dump(2) << "\n";
}

json report_to_json(const CompetitivenessReport& rep) {
  json j;
  j["algorithm"] = algorithm_name(rep.algorithm);
  j["p"] = json_number(rep.cfg.p);
  j["epsilon"] = json_number(rep.cfg.epsilon);
  j["trials"] = rep.trials;
  j["seed"] = rep.seed;
  j["augmentation"] = rep.mode_used == AugmentMode::record ? "record" : "none";
  json per = json::array();
  for (const auto& er : rep.per_element)
    per.push_back({{"element", er.elem},
                   {"hits", er.hits},
                   {"freq", json_number(er.freq)},
                   {"ci_lo", json_number(er.ci.lo)},
                   {"ci_hi", json_number(er.ci.hi)}});
  j["per_element"] = per;
  j["min"] = {{"element", rep.min_element.elem},
              {"freq", json_number(rep.min_element.freq)},
              {"ci_lo", json_number(rep.min_element.ci.lo)},
              {"ci_hi", json_number(rep.min_element.ci.hi)}};
  return j;
}

std::string report_to_csv(const CompetitivenessReport& rep) {
  std::ostringstream out;
  out << "element_id,hits,trials,freq,ci_lo,ci_hi\n";
  char buf[160];
  for (const auto& er : rep.per_element) {
    std::snprintf(buf, sizeof(buf), "%d,%ld,%ld,%.6g,%.6g,%.6g\n", er.elem, er.hits,
                  er.trials, er.freq, er.ci.lo, er.ci.hi);
    out << buf;
  }
  return out.str();
}

json exact_to_json(const ExactResult& res) {
  json j;
  j["cases"] = res.cases;
  j["weight_sum"] = json_number(res.weight_sum);
  json per = json::array();
  for (const auto& er : res.per_element)
    per.push_back({{"element", er.elem}, {"prob", json_number(er.freq)}});
  j["per_element"] = per;
  return j;
}

std::string trace_to_jsonl(const ImprovingTrace& trace) {
  std::ostringstream out;
  for (const TraceRecord& rec : trace.records) {
    json j;
    j["t"] = json_number(rec.t);
    j["elem"] = rec.elem;
    j["opt"] = rec.opt_after;
    if (rec.arc) j["arc"] = {rec.arc->tail, rec.arc->head};
    out << j.dump() << "\n";
  }
  return out.str();
}

json distribution_to_json(const DistributionReport& rep) {
  json j;
  j["rank"] = rep.rank;
  j["trials"] = rep.trials;
  j["ks_last_improving"] = {{"stat", json_number(rep.ks_last_time.stat)},
                            {"pvalue", json_number(rep.ks_last_time.pvalue)}};
  json fits = json::array();
  for (const auto& f : rep.poisson)
    fits.push_back({{"a", json_number(f.a)},
                    {"b", json_number(f.b)},
                    {"rate", json_number(f.rate)},
                    {"stat", json_number(f.chi.stat)},
                    {"df", f.chi.df},
                    {"pvalue", json_number(f.chi.pvalue)}});
  j["poisson_fits"] = fits;
  j["interval_correlation"] = json_number(rep.correlation);
  j["correlation_limit"] = json_number(rep.correlation_limit);
  j["pass"] = rep.pass();
  return j;
}

}  // namespace msp
