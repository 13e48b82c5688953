#include "dfq/dfg.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "dfq/dfr_core.hpp"
#include "dfq/errors.hpp"

namespace dfq {
namespace {

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

// Activities of the first and last timestamp block of a trace.
void count_boundaries(const Trace& trace, Dfg& g) {
  if (trace.events.empty()) return;
  Timestamp first = trace.events.front().timestamp;
  Timestamp last = first;
  for (const auto& e : trace.events) {
    first = std::min(first, e.timestamp);
    last = std::max(last, e.timestamp);
  }
  for (const auto& e : trace.events) {
    if (e.timestamp == first) ++g.start_counts[e.activity];
    if (e.timestamp == last) ++g.end_counts[e.activity];
  }
}

void check_known(const Dfg& g, const std::string& activity) {
  if (!g.activities.contains(activity)) {
    throw ArgumentError("activity '" + activity + "' is not listed in \"activities\"");
  }
}

Frequency positive_count(const nlohmann::json& n, const std::string& what) {
  if (!n.is_number_unsigned() || n.get<Frequency>() == 0) {
    throw ArgumentError(what + " must be a positive integer, got " + n.dump());
  }
  return n.get<Frequency>();
}

}  // namespace

Dfg build_dfg(const EventLog& log, Dfr edges) {
  Dfg g;
  g.edges = std::move(edges);
  for (const auto& t : log.traces()) {
    for (const auto& e : t.events) g.activities.insert(e.activity);
    count_boundaries(t, g);
  }
  return g;
}

Dfg build_dfg(const EventLog& log) { return build_dfg(log, directly_follows(log)); }

std::string to_dot(const Dfg& g) {
  std::map<std::string_view, std::string> node_id;
  std::size_t n = 0;
  for (const auto& a : g.activities) node_id.emplace(a, "a" + std::to_string(n++));
  auto id_of = [&](const std::string& a) -> const std::string& {
    auto it = node_id.find(a);
    if (it == node_id.end()) throw ArgumentError("activity '" + a + "' missing from graph");
    return it->second;
  };

  std::ostringstream out;
  out << "digraph dfg {\n";
  out << "  rankdir=LR;\n";
  out << "  start [label=\"start\", shape=circle];\n";
  out << "  end [label=\"end\", shape=doublecircle];\n";
  for (const auto& a : g.activities) {
    out << "  " << node_id.at(a) << " [label=" << dot_quote(a) << ", shape=box];\n";
  }
  for (const auto& [a, count] : g.start_counts) {
    out << "  start -> " << id_of(a) << " [label=\"" << count << "\"];\n";
  }
  for (const auto& [pair, freq] : g.edges.counts()) {
    out << "  " << id_of(pair.first) << " -> " << id_of(pair.second) << " [label=\"" << freq
        << "\"];\n";
  }
  for (const auto& [a, count] : g.end_counts) {
    out << "  " << id_of(a) << " -> end [label=\"" << count << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_json(const Dfg& g) {
  nlohmann::json j;
  j["activities"] = nlohmann::json::array();
  for (const auto& a : g.activities) j["activities"].push_back(a);
  j["edges"] = nlohmann::json::array();
  for (const auto& [pair, freq] : g.edges.counts()) {
    j["edges"].push_back({{"from", pair.first}, {"to", pair.second}, {"freq", freq}});
  }
  j["starts"] = nlohmann::json::object();
  for (const auto& [a, n] : g.start_counts) j["starts"][a] = n;
  j["ends"] = nlohmann::json::object();
  for (const auto& [a, n] : g.end_counts) j["ends"][a] = n;
  return j.dump(2) + "\n";
}

Dfg dfg_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ArgumentError(std::string("invalid graph JSON: ") + e.what());
  }
  try {
    Dfg g;
    for (const auto& a : j.at("activities")) g.activities.insert(a.get<std::string>());
    for (const auto& e : j.at("edges")) {
      const auto from = e.at("from").get<std::string>();
      const auto to = e.at("to").get<std::string>();
      const auto freq = positive_count(e.at("freq"), "frequency of edge " + from + " -> " + to);
      check_known(g, from);
      check_known(g, to);
      g.edges.add(from, to, freq);
    }
    for (const auto& [a, n] : j.at("starts").items()) {
      check_known(g, a);
      g.start_counts[a] = positive_count(n, "start count of " + a);
    }
    for (const auto& [a, n] : j.at("ends").items()) {
      check_known(g, a);
      g.end_counts[a] = positive_count(n, "end count of " + a);
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("invalid graph JSON: ") + e.what());
  }
}

}  // namespace dfq
