#include "fraclab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fraclab/error.hpp"

namespace fraclab {

using nlohmann::json;

double parse_real(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash != std::string::npos) {
        std::size_t p1 = 0, p2 = 0;
        const double num = std::stod(s.substr(0, slash), &p1);
        const double den = std::stod(s.substr(slash + 1), &p2);
        if (p1 != slash || p2 != s.size() - slash - 1 || den == 0.0)
          throw std::invalid_argument(s);
        return num / den;
      }
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw PreconditionError("cannot parse number '" + s +
                              "' (expected decimal or rational p/q)");
    }
  }
  throw PreconditionError("expected a number or a numeric string");
}

Ifs ifs_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("maps"))
    throw PreconditionError("ifs document needs 'dim' and 'maps'");
  const int dim = j.at("dim").get<int>();
  std::vector<Similitude> maps;
  for (const auto& m : j.at("maps")) {
    Similitude s;
    s.ratio = parse_real(m.at("ratio"));
    const auto& t = m.at("translation");
    if (!t.is_array() || static_cast<int>(t.size()) != dim)
      throw PreconditionError(
          "ifs document: translation must have exactly 'dim' coordinates");
    s.translation = Vec::zero(dim);
    for (int i = 0; i < dim; ++i)
      s.translation[i] = parse_real(t[static_cast<std::size_t>(i)]);
    maps.push_back(s);
  }
  std::vector<double> weights;
  if (j.contains("weights"))
    for (const auto& w : j.at("weights")) weights.push_back(parse_real(w));
  std::string name = j.value("name", std::string{});
  return make_ifs(std::move(maps), std::move(weights), std::move(name));
}

json ifs_to_json(const Ifs& ifs) {
  json j;
  j["dim"] = ifs.ambient_dim;
  j["maps"] = json::array();
  for (const auto& m : ifs.maps) {
    json jm;
    jm["ratio"] = m.ratio;
    jm["translation"] = json::array();
    for (int i = 0; i < ifs.ambient_dim; ++i)
      jm["translation"].push_back(m.translation[i]);
    j["maps"].push_back(jm);
  }
  if (ifs.has_weights()) j["weights"] = ifs.weights;
  if (!ifs.name.empty()) j["name"] = ifs.name;
  return j;
}

Ifs load_ifs(const std::string& path) {
  return ifs_from_json(json::parse(read_text_file(path)));
}

SmoothMap smooth_map_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "product2") return SmoothMap::product2();
  if (kind == "product3") return SmoothMap::product3();
  if (kind == "distance") {
    const auto& pin = j.at("pin");
    Vec p = Vec::zero(static_cast<int>(pin.size()));
    for (std::size_t i = 0; i < pin.size(); ++i)
      p[static_cast<int>(i)] = parse_real(pin[i]);
    return SmoothMap::distance_from(p);
  }
  if (kind == "linear") {
    const auto& n = j.at("n");
    Vec v = Vec::zero(static_cast<int>(n.size()));
    for (std::size_t i = 0; i < n.size(); ++i)
      v[static_cast<int>(i)] = parse_real(n[i]);
    return SmoothMap::linear(Direction(v));
  }
  if (kind == "poly") {
    const int dim = j.at("dim").get<int>();
    std::vector<PolyTerm> terms;
    for (const auto& t : j.at("coeffs")) {
      PolyTerm term;
      term.coeff = parse_real(t.at("c"));
      const auto& e = t.at("e");
      for (std::size_t i = 0; i < e.size() && i < 3; ++i)
        term.expo[i] = e[i].get<int>();
      terms.push_back(term);
    }
    return SmoothMap::polynomial(dim, std::move(terms));
  }
  throw PreconditionError("unknown map kind '" + kind + "'");
}

json smooth_map_to_json(const SmoothMap& map) {
  json j;
  switch (map.kind()) {
    case SmoothMap::Kind::Product2:
      j["kind"] = "product2";
      break;
    case SmoothMap::Kind::Product3:
      j["kind"] = "product3";
      break;
    case SmoothMap::Kind::DistanceFrom: {
      j["kind"] = "distance";
      j["pin"] = json::array();
      for (int i = 0; i < map.dim(); ++i) j["pin"].push_back(map.pin()[i]);
      break;
    }
    case SmoothMap::Kind::Linear: {
      j["kind"] = "linear";
      j["n"] = json::array();
      for (int i = 0; i < map.dim(); ++i) j["n"].push_back(map.pin()[i]);
      break;
    }
    case SmoothMap::Kind::Poly: {
      j["kind"] = "poly";
      j["dim"] = map.dim();
      j["coeffs"] = json::array();
      for (const auto& t : map.terms()) {
        json jt;
        jt["c"] = t.coeff;
        jt["e"] = {t.expo[0], t.expo[1], t.expo[2]};
        j["coeffs"].push_back(jt);
      }
      break;
    }
  }
  return j;
}

std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (char ch : data) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  write_text_file(path, out.str());
}

void write_loglog_dat(const std::string& path, const BoxCountResult& r) {
  std::ostringstream out;
  out << "# log10(1/scale) log10(count)  slope=" << format_g(r.slope)
      << " r2=" << format_g(r.r_squared) << '\n';
  for (std::size_t i = 0; i < r.scales.size(); ++i)
    out << format_g(std::log10(1.0 / r.scales[i])) << ' '
        << format_g(std::log10(static_cast<double>(r.counts[i]))) << '\n';
  write_text_file(path, out.str());
}

}  // namespace fraclab
