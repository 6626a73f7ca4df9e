#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "votelab/profiles.hpp"
#include "votelab/queries.hpp"
#include "votelab/scoring.hpp"

namespace votelab {

using Json = nlohmann::ordered_json;

/// Rankings print as "a>b>c"; subsets and scoring vectors as comma-joined
/// tokens. All probabilities and weights serialize in the canonical "p/q"
/// form, so serialization round-trips bit-exactly.

inline std::string ranking_to_string(const CandidateSet& candidates, const Ranking& r) {
  std::string out;
  for (int j = 0; j < r.size(); ++j) {
    if (j > 0) out += '>';
    out += candidates.label(r.at(j));
  }
  return out;
}

inline Ranking parse_ranking(const CandidateSet& candidates, std::string_view text) {
  std::vector<CandidateId> order;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('>', start);
    if (end == std::string_view::npos) end = text.size();
    auto id = candidates.find(text.substr(start, end - start));
    if (!id) {
      throw std::invalid_argument("parse_ranking: unknown candidate \"" +
                                  std::string(text.substr(start, end - start)) + "\"");
    }
    order.push_back(*id);
    start = end + 1;
    if (end == text.size()) break;
  }
  Ranking r{std::move(order)};
  if (!is_valid_ranking(r, candidates.size())) {
    throw std::invalid_argument("parse_ranking: not a full ranking");
  }
  return r;
}

inline std::vector<CandidateId> parse_subset(const CandidateSet& candidates, std::string_view text) {
  std::vector<CandidateId> ids;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto id = candidates.find(text.substr(start, end - start));
    if (!id) {
      throw std::invalid_argument("parse_subset: unknown candidate \"" +
                                  std::string(text.substr(start, end - start)) + "\"");
    }
    ids.push_back(*id);
    start = end + 1;
    if (end == text.size()) break;
  }
  return ids;
}

inline ScoringVector parse_scoring_vector(std::string_view text) {
  std::vector<Rational> weights;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    weights.push_back(Rational::parse(text.substr(start, end - start)));
    start = end + 1;
    if (end == text.size()) break;
  }
  return ScoringVector(std::move(weights));
}

inline std::string scoring_vector_to_string(const ScoringVector& alpha) {
  std::string out;
  for (int j = 0; j < alpha.size(); ++j) {
    if (j > 0) out += ',';
    out += alpha[j].to_string();
  }
  return out;
}

inline Json profile_to_json(const Profile& p) {
  Json doc;
  doc["candidates"] = p.candidates().labels();
  Json rankings = Json::array();
  for (const auto& [ranking, mass] : p.support()) {
    Json entry;
    Json labels = Json::array();
    for (CandidateId c : ranking.order) labels.push_back(p.candidates().label(c));
    entry["ranking"] = std::move(labels);
    entry["probability"] = mass.to_string();
    rankings.push_back(std::move(entry));
  }
  doc["rankings"] = std::move(rankings);
  return doc;
}

inline Profile profile_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("candidates") || !doc.contains("rankings")) {
    throw std::invalid_argument("profile: document needs candidates and rankings");
  }
  std::vector<std::string> labels;
  for (const auto& label : doc.at("candidates")) labels.push_back(label.get<std::string>());
  CandidateSet candidates(std::move(labels));
  std::map<Ranking, Rational> mass;
  for (const auto& entry : doc.at("rankings")) {
    std::vector<CandidateId> order;
    for (const auto& label : entry.at("ranking")) {
      auto id = candidates.find(label.get<std::string>());
      if (!id) {
        throw std::invalid_argument("profile: unknown candidate \"" +
                                    label.get<std::string>() + "\" in ranking");
      }
      order.push_back(*id);
    }
    Rational probability = Rational::parse(entry.at("probability").get<std::string>());
    if (!mass.emplace(Ranking(std::move(order)), probability).second) {
      throw std::invalid_argument("profile: duplicate ranking entry");
    }
  }
  return Profile(std::move(candidates), std::move(mass));
}

/// Canonical text form: 2-space indented document, support in canonical
/// ranking order, trailing newline.
inline std::string profile_to_string(const Profile& p) {
  return profile_to_json(p).dump(2) + "\n";
}

inline Profile profile_from_string(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("profile: malformed document: ") + e.what());
  }
  return profile_from_json(doc);
}

inline void save_profile(const Profile& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << profile_to_string(p);
}

inline Profile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return profile_from_string(buffer.str());
}

/// Session transcript: the budget plus every logged query with its response,
/// in issue order.
inline Json transcript_to_json(const QuerySession& session) {
  Json doc;
  doc["max_query_size"] = session.max_query_size();
  doc["candidates"] = session.candidates().labels();
  Json queries = Json::array();
  for (const Query& q : session.log()) {
    Json entry;
    Json subset = Json::array();
    for (CandidateId c : q.subset) subset.push_back(session.candidates().label(c));
    entry["subset"] = std::move(subset);
    const Profile* response = session.cached_response(q);
    Json rankings = Json::array();
    for (const auto& [ranking, mass] : response->support()) {
      Json line;
      Json labels = Json::array();
      for (CandidateId c : ranking.order) labels.push_back(response->candidates().label(c));
      line["ranking"] = std::move(labels);
      line["probability"] = mass.to_string();
      rankings.push_back(std::move(line));
    }
    entry["response"] = std::move(rankings);
    queries.push_back(std::move(entry));
  }
  doc["queries"] = std::move(queries);
  return doc;
}

} // namespace votelab
