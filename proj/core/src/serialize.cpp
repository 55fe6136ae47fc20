#include "convfix/serialize.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace convfix {

std::string json_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string measure_to_json(const ComplexMeasure& m) {
  std::ostringstream out;
  out << "{\"carrier\":\"" << (m.is_lattice() ? "Z" : json_escape(m.group()->name()))
      << "\",\"atoms\":[";
  bool first = true;
  if (m.is_lattice()) {
    for (const auto& [n, c] : m.atoms()) {
      if (!first) out << ',';
      first = false;
      out << "{\"n\":" << n << ",\"re\":" << json_number(c.real())
          << ",\"im\":" << json_number(c.imag()) << "}";
    }
  } else {
    for (int g = 0; g < m.group()->order(); ++g) {
      const cplx c = m.at(g);
      if (c == cplx{0.0, 0.0}) continue;
      if (!first) out << ',';
      first = false;
      out << "{\"g\":" << g << ",\"re\":" << json_number(c.real())
          << ",\"im\":" << json_number(c.imag()) << "}";
    }
  }
  out << "]}";
  return out.str();
}

ComplexMeasure measure_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("measure JSON parse error: ") + e.what());
  }
  if (!j.contains("carrier")) throw ConfigError("measure JSON is missing 'carrier'");
  const std::string carrier = j.at("carrier").get<std::string>();
  if (carrier == "Z") {
    std::vector<std::pair<long long, cplx>> atoms;
    for (const auto& a : j.value("atoms", nlohmann::json::array()))
      atoms.emplace_back(a.at("n").get<long long>(),
                         cplx{a.value("re", 0.0), a.value("im", 0.0)});
    return ComplexMeasure::lattice_from_atoms(atoms);
  }
  GroupPtr g = build_group(carrier);
  std::vector<std::pair<int, cplx>> atoms;
  for (const auto& a : j.value("atoms", nlohmann::json::array()))
    atoms.emplace_back(a.at("g").get<int>(), cplx{a.value("re", 0.0), a.value("im", 0.0)});
  return ComplexMeasure::from_atoms(g, atoms);
}

namespace {

cplx parse_complex_value(const std::string& text) {
  // real, or re+imi / re-imi, or bare 'i'-suffixed imaginary.
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ConfigError("empty value in measure literal");
  if (s.back() == 'i' || s.back() == 'j') {
    s.pop_back();
    // Split at the last '+'/'-' that is not an exponent sign or leading.
    for (int pos = static_cast<int>(s.size()) - 1; pos > 0; --pos) {
      if ((s[pos] == '+' || s[pos] == '-') && s[pos - 1] != 'e' && s[pos - 1] != 'E') {
        const double re = std::stod(s.substr(0, pos));
        std::string imag = s.substr(pos);
        if (imag == "+") imag = "1";
        if (imag == "-") imag = "-1";
        return cplx{re, std::stod(imag)};
      }
    }
    if (s.empty() || s == "+") return cplx{0.0, 1.0};
    if (s == "-") return cplx{0.0, -1.0};
    return cplx{0.0, std::stod(s)};
  }
  return cplx{std::stod(s), 0.0};
}

std::vector<std::pair<long long, cplx>> parse_literal_atoms(const std::string& text) {
  std::vector<std::pair<long long, cplx>> atoms;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw ConfigError("measure literal entry '" + item + "' is missing ':'");
    try {
      atoms.emplace_back(std::stoll(item.substr(0, colon)),
                         parse_complex_value(item.substr(colon + 1)));
    } catch (const std::invalid_argument&) {
      throw ConfigError("bad measure literal entry '" + item + "'");
    }
  }
  if (atoms.empty()) throw ConfigError("empty measure literal");
  return atoms;
}

}  // namespace

ComplexMeasure measure_from_literal(const std::string& text, const GroupPtr& g) {
  std::vector<std::pair<int, cplx>> atoms;
  for (const auto& [idx, c] : parse_literal_atoms(text)) {
    if (idx < 0 || idx >= g->order())
      throw ConfigError("measure literal index " + std::to_string(idx) + " outside " + g->name());
    atoms.emplace_back(static_cast<int>(idx), c);
  }
  return ComplexMeasure::from_atoms(g, atoms);
}

ComplexMeasure lattice_measure_from_literal(const std::string& text, LatticeGroup z) {
  return ComplexMeasure::lattice_from_atoms(parse_literal_atoms(text), z);
}

std::string dual_to_json(const DualFunction& d) {
  std::ostringstream out;
  if (d.is_lattice()) {
    out << "{\"carrier\":\"Z\",\"atoms\":[";
    bool first = true;
    for (const auto& atom : d.toral().atoms) {
      if (!first) out << ',';
      first = false;
      out << "{\"re\":" << json_number(atom.coeff.real())
          << ",\"im\":" << json_number(atom.coeff.imag())
          << ",\"theta\":" << json_number(atom.angle) << "}";
    }
    out << "],";
  } else {
    out << "{\"carrier\":\"" << json_escape(d.group()->name()) << "\",\"values\":[";
    for (int g = 0; g < d.group()->order(); ++g) {
      if (g) out << ',';
      out << "{\"g\":" << g << ",\"re\":" << json_number(d.at(g).real())
          << ",\"im\":" << json_number(d.at(g).imag()) << "}";
    }
    out << "],";
  }
  out << "\"certificate\":{\"kind\":\"" << certificate_kind_name(d.certificate().kind) << "\"";
  if (d.certificate().norm) out << ",\"norm\":" << json_number(*d.certificate().norm);
  out << "}}";
  return out.str();
}

DualFunction dual_from_literal(const std::string& text, const GroupPtr& g) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.rfind("char:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(s.substr(5));
    } catch (const std::exception&) {
      throw ConfigError("bad character index in dual literal '" + text + "'");
    }
    const auto chars = characters_of(full_subgroup(g));
    if (k < 0 || k >= static_cast<int>(chars.size()))
      throw ConfigError("character index " + std::to_string(k) + " outside [0, " +
                        std::to_string(chars.size()) + ") for " + g->name());
    std::vector<cplx> values(g->order());
    for (int t = 0; t < g->order(); ++t) values[t] = chars[k].at(t);
    return make_dual(g, std::move(values));
  }
  std::vector<cplx> values(g->order(), cplx{0.0, 0.0});
  for (const auto& [idx, c] : parse_literal_atoms(text)) {
    if (idx < 0 || idx >= g->order())
      throw ConfigError("dual literal index " + std::to_string(idx) + " outside " + g->name());
    values[static_cast<std::size_t>(idx)] = c;
  }
  return make_dual(g, std::move(values));
}

std::uint64_t digest_of(const std::string& canonical_inputs) { return fnv1a(canonical_inputs); }

}  // namespace convfix
