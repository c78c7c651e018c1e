#include "margulis/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace margulis {

std::string format_real(Real x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

using nlohmann::json;

json vec_to_json(const Vec3& v) { return json::array({v(0), v(1), v(2)}); }

Vec3 vec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3)
    throw MalformedInput("group file: expected a 3-vector");
  return Vec3(j[0].get<Real>(), j[1].get<Real>(), j[2].get<Real>());
}

}  // namespace

std::string group_file_to_json(const GroupFile& gf) {
  json j;
  j["schema_version"] = gf.schema_version;
  json gens = json::array();
  for (const auto& g : gf.group.gens) {
    json linear = json::array();
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) linear.push_back(g.linear.m(r, c));
    gens.push_back({{"linear", linear}, {"trans", vec_to_json(g.trans)}});
  }
  j["generators"] = gens;
  json orders = json::array();
  for (const auto& o : gf.group.orders) {
    if (o)
      orders.push_back(*o);
    else
      orders.push_back(nullptr);
  }
  j["orders"] = orders;
  j["metadata"] = {{"seed", gf.metadata.seed},
                   {"description", gf.metadata.description}};
  return j.dump(2) + "\n";
}

GroupFile group_file_from_json(const std::string& text, const Config& cfg) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("group file: ") + e.what());
  }
  GroupFile gf;
  try {
    gf.schema_version = j.at("schema_version").get<int>();
    if (gf.schema_version != 1)
      throw MalformedInput("group file: unsupported schema version");
    for (const auto& g : j.at("generators")) {
      const auto& lin = g.at("linear");
      if (!lin.is_array() || lin.size() != 9)
        throw MalformedInput("group file: linear block must have 9 entries");
      Mat3 m;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = lin[3 * r + c].get<Real>();
      AffineIso iso;
      iso.linear = LorentzMap::from_matrix(m, cfg);
      iso.trans = vec_from_json(g.at("trans"));
      gf.group.gens.push_back(iso);
    }
    for (const auto& o : j.at("orders")) {
      if (o.is_null())
        gf.group.orders.push_back(std::nullopt);
      else
        gf.group.orders.push_back(o.get<int>());
    }
    if (j.contains("metadata")) {
      gf.metadata.seed = j["metadata"].value("seed", std::uint64_t(0));
      gf.metadata.description = j["metadata"].value("description", "");
    }
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("group file: ") + e.what());
  }
  if (gf.group.orders.size() != gf.group.gens.size())
    throw MalformedInput("group file: orders length mismatch");
  validate_presentation(gf.group, cfg);
  return gf;
}

GroupFile load_group_file(const std::string& path, const Config& cfg) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open group file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return group_file_from_json(ss.str(), cfg);
}

void save_group_file(const std::string& path, const GroupFile& gf) {
  std::ofstream out(path);
  if (!out) throw MalformedInput("cannot write group file: " + path);
  out << group_file_to_json(gf);
}

void write_spectrum_table(std::ostream& os, const Spectrum& s) {
  os << "# word\talpha\tskipped\n";
  for (const auto& e : s.entries)
    os << word_to_string(e.word) << '\t' << format_real(e.alpha) << '\t'
       << (e.skipped ? 1 : 0) << '\n';
}

void write_spectrum_json(std::ostream& os, const Spectrum& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : s.entries)
    rows.push_back({{"word", word_to_string(e.word)},
                    {"alpha", e.alpha},
                    {"skipped", e.skipped}});
  os << rows.dump(2) << "\n";
}

namespace {

void certificate_fields(const ConjugacyCertificate& c, std::ostream& os,
                        bool json_mode) {
  if (json_mode) {
    nlohmann::json j;
    j["verdict"] = verdict_name(c.verdict);
    nlohmann::json f = nlohmann::json::array();
    for (int r = 0; r < 3; ++r)
      for (int k = 0; k < 3; ++k) f.push_back(c.f.m(r, k));
    j["f"] = f;
    j["tau"] = {c.tau(0), c.tau(1), c.tau(2)};
    j["residual"] = c.residual;
    j["words_checked"] = c.words_checked;
    if (c.witness) {
      j["witness_word"] = word_to_string(*c.witness);
      j["witness_dalpha"] = c.witness_dalpha;
    }
    os << j.dump(2) << "\n";
    return;
  }
  os << "verdict: " << verdict_name(c.verdict) << '\n';
  os << "f:";
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 3; ++k) os << ' ' << format_real(c.f.m(r, k));
  os << '\n';
  os << "tau: " << format_real(c.tau(0)) << ' ' << format_real(c.tau(1)) << ' '
     << format_real(c.tau(2)) << '\n';
  os << "residual: " << format_real(c.residual) << '\n';
  os << "words_checked: " << c.words_checked << '\n';
  if (c.witness) {
    os << "witness_word: " << word_to_string(*c.witness) << '\n';
    os << "witness_dalpha: " << format_real(c.witness_dalpha) << '\n';
  }
}

}  // namespace

void write_certificate_text(std::ostream& os, const ConjugacyCertificate& c) {
  certificate_fields(c, os, false);
}

void write_certificate_json(std::ostream& os, const ConjugacyCertificate& c) {
  certificate_fields(c, os, true);
}

void write_convergence_table(std::ostream& os,
                             const std::vector<std::pair<int, Real>>& rows) {
  os << "# n\tdistance\tratio\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    os << rows[i].first << '\t' << format_real(rows[i].second) << '\t';
    if (i + 1 < rows.size() && rows[i].second > 0)
      os << format_real(rows[i + 1].second / rows[i].second);
    else
      os << "nan";
    os << '\n';
  }
}

}  // namespace margulis
