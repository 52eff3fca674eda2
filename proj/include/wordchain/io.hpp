#pragma once

// JSON / CSV / text serialization for measures, pairs, matrices, paths,
// convergence reports and word sequences.

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wordchain/boundary.hpp"
#include "wordchain/bridges.hpp"
#include "wordchain/errors.hpp"
#include "wordchain/measures.hpp"
#include "wordchain/rational.hpp"
#include "wordchain/stats.hpp"
#include "wordchain/words.hpp"

namespace wordchain::io {

using json = nlohmann::ordered_json;

/// Six significant digits, locale independent.
inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

/// JSON number rounded to six significant digits (dumps as e.g. 0.333333).
inline json number6(double x) { return std::stod(format_double(x)); }

/// Accepts "p/q", integer and decimal strings, or JSON integers.
inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw invalid_argument("expected a rational as a \"p/q\" string, got " + j.dump());
}

inline json rationals_to_json(const std::vector<Rational>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

inline std::vector<Rational> rationals_from_json(const json& j) {
  if (!j.is_array()) throw invalid_argument("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

inline json to_json(const StepMeasure& m) {
  return {{"breakpoints", rationals_to_json(m.breakpoints())}, {"densities", rationals_to_json(m.densities())}};
}

inline StepMeasure step_measure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("breakpoints") || !j.contains("densities"))
    throw invalid_argument("measure JSON needs \"breakpoints\" and \"densities\"");
  return StepMeasure(rationals_from_json(j.at("breakpoints")), rationals_from_json(j.at("densities")));
}

inline json to_json(const CanonicalPair& p) { return {{"mu", to_json(p.mu())}, {"nu", to_json(p.nu())}}; }

/// Validates density(mu) + density(nu) = 2 on [0,1].
inline CanonicalPair canonical_pair_from_json(const json& j) {
  if (!j.is_object() || !j.contains("mu") || !j.contains("nu"))
    throw invalid_argument("pair JSON needs \"mu\" and \"nu\"");
  return CanonicalPair(step_measure_from_json(j.at("mu")), step_measure_from_json(j.at("nu")));
}

inline json parse_json(std::istream& in, const std::string& what) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw invalid_argument(what + ": malformed JSON (" + e.what() + ")");
  }
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_argument("cannot open " + path);
  return in;
}

inline CanonicalPair load_pair(const std::string& path) {
  auto in = open_input(path);
  return canonical_pair_from_json(parse_json(in, path));
}

inline json to_json(const CountMatrix& m) {
  json index = json::array();
  for (const auto& w : m.index) index.push_back(w.str());
  json entries = json::array();
  for (const auto& row : m.entries) {
    json r = json::array();
    for (const auto& x : row) r.push_back(x.str());
    entries.push_back(std::move(r));
  }
  return {{"index", std::move(index)}, {"entries", std::move(entries)}};
}

inline CountMatrix count_matrix_from_json(const json& j) {
  CountMatrix m;
  for (const auto& w : j.at("index")) m.index.emplace_back(w.get<std::string>());
  for (const auto& row : j.at("entries")) {
    std::vector<BigInt> r;
    for (const auto& x : row) r.emplace_back(x.get<std::string>());
    if (r.size() != m.index.size()) throw invalid_argument("matrix row length differs from index size");
    m.entries.push_back(std::move(r));
  }
  if (m.entries.size() != m.index.size()) throw invalid_argument("matrix row count differs from index size");
  return m;
}

inline json to_json(const Estimate& e) {
  return {{"estimate", number6(e.value)}, {"stderr", number6(e.stderr_)}, {"samples", e.samples}};
}

/// Report schema: see README ("Boundary report").
inline json to_json(const ConvergenceReport& r) {
  json patterns = json::array();
  for (const auto& t : r.patterns) {
    json ratios = json::array();
    for (const auto& x : t.ratios) ratios.push_back(to_string(x));
    json errors = json::array();
    for (double e : t.errors) errors.push_back(number6(e));
    patterns.push_back({{"word", t.w.str()}, {"target", to_string(t.target)},
                        {"ratios", std::move(ratios)}, {"errors", std::move(errors)}});
  }
  json steps = json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"k", s.k}, {"n", s.n}, {"mu_distance", number6(s.mu_distance)},
                     {"nu_distance", number6(s.nu_distance)}});
  return {{"tolerance", number6(r.tolerance)},
          {"distances_within_tolerance", r.distances_within_tolerance},
          {"errors_decreasing", r.errors_decreasing},
          {"consistent", r.consistent()},
          {"verdict", r.verdict()},
          {"patterns", std::move(patterns)},
          {"steps", std::move(steps)}};
}

/// Parses a word, reading "∅" as the empty word.
inline BalancedWord parse_balanced(std::string_view s) {
  if (s == "∅") return BalancedWord();
  return BalancedWord(s);
}

/// One word per line; blank lines and lines starting with '#' are skipped.
inline WordSequence read_word_sequence(std::istream& in) {
  std::vector<BalancedWord> words;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    try {
      words.push_back(parse_balanced(std::string_view(line).substr(first, last - first + 1)));
    } catch (const invalid_argument& e) {
      throw invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return WordSequence(std::move(words));
}

inline WordSequence load_word_sequence(const std::string& path) {
  auto in = open_input(path);
  return read_word_sequence(in);
}

inline void write_path_csv(std::ostream& out, const BridgePath& path) {
  out << "step,word\n";
  for (std::size_t k = 0; k < path.states.size(); ++k) out << k << ',' << path.states[k].str() << '\n';
}

inline json to_json(const BridgePath& path) {
  json rows = json::array();
  for (std::size_t k = 0; k < path.states.size(); ++k) rows.push_back({{"step", k}, {"word", path.states[k].str()}});
  return rows;
}

}  // namespace wordchain::io
