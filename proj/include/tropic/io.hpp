// io.hpp — file formats for spectra and generators.
//
// Spectrum JSON:   {"levels":[{"E":<num-or-string>,"S":<num-or-string>}, ...]}
// Spectrum CSV:    one "E,S" pair per line, optional "E,S" header.
//
// In exact mode, strings ("p/q", "0.25", "3") parse to exact rationals,
// integer JSON numbers are exact, and floating JSON numbers are taken at
// their exact binary value.  In floating mode every form is read as a double.
// Serialization round-trips: exact values emit canonical "p/q" strings,
// doubles emit shortest-round-trip JSON numbers (17 significant digits in
// CSV).
//
// Generator JSON:
//   {"family":"linear_ratio","e0":1,"a":2}
//   {"family":"table_plus_tail","head":[levels...],
//    "tail":{"E":[c0,c1],"S":[d0,d1],"from":4}}        tail optional = finite
//   {"family":"two_sided","head":[levels...],
//    "positive_tail":{...},"negative_tail":{...}}
// Affine rules are coefficient pairs: E_n = c0 + c1*n.

#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "tropic/errors.hpp"
#include "tropic/limits.hpp"
#include "tropic/numbers.hpp"
#include "tropic/spectrum.hpp"

namespace tropic {

enum class FileFormat { json, csv };

namespace detail {

template <NumberKind R>
R number_from_json(const nlohmann::json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return number_traits<R>::from_string(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if constexpr (number_traits<R>::exact) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number_unsigned()) return Rational(v.get<unsigned long long>());
    if (v.is_number_float()) return Rational(v.get<double>());  // exact dyadic
  } else {
    if (v.is_number()) return v.get<double>();
  }
  throw ParseError(where + ": expected a number or numeric string");
}

template <NumberKind R>
nlohmann::json number_to_json(const R& value) {
  if constexpr (number_traits<R>::exact)
    return to_string(value);
  else
    return value;
}

template <NumberKind R>
std::vector<Level<R>> levels_from_json(const nlohmann::json& arr,
                                       const std::string& where) {
  if (!arr.is_array()) throw ParseError(where + ": expected an array of levels");
  std::vector<Level<R>> levels;
  levels.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& item = arr[i];
    const std::string here = where + "[" + std::to_string(i) + "]";
    if (!item.is_object() || !item.contains("E") || !item.contains("S"))
      throw ParseError(here + ": expected an object with fields E and S");
    levels.push_back({number_from_json<R>(item["E"], here + ".E"),
                      number_from_json<R>(item["S"], here + ".S")});
  }
  return levels;
}

inline std::string trimmed(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

template <NumberKind R>
Spectrum<R> parse_spectrum_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("levels"))
    throw ParseError("spectrum JSON must be an object with a 'levels' array");
  return make_spectrum(detail::levels_from_json<R>(doc["levels"], "levels"));
}

template <NumberKind R>
Spectrum<R> parse_spectrum_csv(const std::string& text) {
  std::vector<Level<R>> levels;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = detail::trimmed(raw);
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("line " + std::to_string(line_no) + ": expected 'E,S'");
    std::string e_field = detail::trimmed(line.substr(0, comma));
    std::string s_field = detail::trimmed(line.substr(comma + 1));
    if (levels.empty() && (e_field == "E" || e_field == "e") &&
        (s_field == "S" || s_field == "s"))
      continue;  // optional header
    try {
      levels.push_back({number_traits<R>::from_string(e_field),
                        number_traits<R>::from_string(s_field)});
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return make_spectrum(std::move(levels));
}

template <NumberKind R>
Spectrum<R> parse_spectrum(const std::string& text, FileFormat format) {
  return format == FileFormat::json ? parse_spectrum_json<R>(text)
                                    : parse_spectrum_csv<R>(text);
}

template <NumberKind R>
std::string spectrum_to_json(const Spectrum<R>& s) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& lv : s)
    levels.push_back({{"E", detail::number_to_json<R>(lv.energy)},
                      {"S", detail::number_to_json<R>(lv.entropy)}});
  return nlohmann::json{{"levels", levels}}.dump();
}

template <NumberKind R>
std::string spectrum_to_csv(const Spectrum<R>& s) {
  std::string out = "E,S\n";
  for (const auto& lv : s) {
    out += to_string(lv.energy);
    out += ',';
    out += to_string(lv.entropy);
    out += '\n';
  }
  return out;
}

template <NumberKind R>
std::string serialize_spectrum(const Spectrum<R>& s, FileFormat format) {
  return format == FileFormat::json ? spectrum_to_json(s) : spectrum_to_csv(s);
}

namespace detail {

inline AffineRule affine_from_json(const nlohmann::json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ParseError(where + ": expected [c0, c1] coefficients");
  return AffineRule{v[0].get<double>(), v[1].get<double>()};
}

inline TailRule tail_from_json(const nlohmann::json& v, const std::string& where) {
  if (!v.is_object() || !v.contains("E") || !v.contains("S") || !v.contains("from"))
    throw ParseError(where + ": expected {\"E\":[c0,c1],\"S\":[c0,c1],\"from\":n}");
  TailRule t;
  t.energy = affine_from_json(v["E"], where + ".E");
  t.entropy = affine_from_json(v["S"], where + ".S");
  if (!v["from"].is_number_integer())
    throw ParseError(where + ".from: expected an integer index");
  t.from = v["from"].get<long>();
  return t;
}

}  // namespace detail

inline GeneratorSpec parse_generator_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("family") || !doc["family"].is_string())
    throw ParseError("generator JSON must be an object with a 'family' string");
  const std::string family = doc["family"].get<std::string>();

  try {
    if (family == "linear_ratio") {
      if (!doc.contains("e0") || !doc.contains("a"))
        throw ParseError("linear_ratio needs fields e0 and a");
      return GeneratorSpec::linear_ratio(doc["e0"].get<double>(),
                                         doc["a"].get<double>());
    }
    std::vector<Level<double>> head;
    if (doc.contains("head"))
      head = detail::levels_from_json<double>(doc["head"], "head");
    if (family == "finite") return GeneratorSpec::finite(std::move(head));
    if (family == "table_plus_tail") {
      if (!doc.contains("tail")) return GeneratorSpec::finite(std::move(head));
      return GeneratorSpec::table_plus_tail(
          std::move(head), detail::tail_from_json(doc["tail"], "tail"));
    }
    if (family == "two_sided") {
      if (!doc.contains("negative_tail"))
        throw ParseError("two_sided needs a negative_tail");
      TailRule down = detail::tail_from_json(doc["negative_tail"], "negative_tail");
      if (!doc.contains("positive_tail"))
        return GeneratorSpec::head_plus_lower_tail(std::move(head), down);
      return GeneratorSpec::two_sided(
          std::move(head),
          detail::tail_from_json(doc["positive_tail"], "positive_tail"), down);
    }
  } catch (const GeneratorSpecError& e) {
    throw ParseError(std::string("invalid generator: ") + e.what());
  }
  throw ParseError("unknown generator family '" + family + "'");
}

}  // namespace tropic
