#include "delib/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "delib/errors.hpp"

namespace delib {

using nlohmann::json;

void GeneratorSpec::validate() const {
  space.validate();
  if (n < 1) throw ConfigError("generator needs n >= 1");
  if (!box.empty() && box.size() != space.point_size())
    throw ConfigError("generator box must give one [low, high] per dimension");
  for (const auto& [lo, hi] : box) {
    if (!(lo <= hi)) throw ConfigError("generator box has low > high");
  }
}

Profile generate(const GeneratorSpec& g) {
  g.validate();
  std::mt19937_64 rng(g.seed);
  Profile out{g.space, {}};
  out.points.reserve(static_cast<std::size_t>(g.n));
  const auto size = g.space.point_size();
  for (int i = 0; i < g.n; ++i) {
    switch (g.space.family) {
      case Family::Euclidean: {
        std::vector<double> c(size);
        for (std::size_t t = 0; t < size; ++t) {
          const auto [lo, hi] = g.box.empty() ? std::pair{-10.0, 10.0} : g.box[t];
          if (g.space.integer_lattice) {
            const auto ilo = static_cast<long>(std::ceil(lo));
            const auto ihi = static_cast<long>(std::floor(hi));
            if (ilo > ihi) throw ConfigError("generator box holds no lattice point");
            c[t] = static_cast<double>(std::uniform_int_distribution<long>(ilo, ihi)(rng));
          } else {
            c[t] = lo == hi ? lo : std::uniform_real_distribution<double>(lo, hi)(rng);
          }
        }
        out.points.push_back(Point::real(std::move(c)));
        break;
      }
      case Family::Binary: {
        std::vector<int> bits(size, 0);
        if (g.space.committee()) {
          std::vector<std::size_t> idx(size);
          std::iota(idx.begin(), idx.end(), 0);
          std::shuffle(idx.begin(), idx.end(), rng);
          for (int j = 0; j < *g.space.committee_size; ++j) bits[idx[j]] = 1;
        } else {
          std::bernoulli_distribution coin(0.5);
          for (auto& b : bits) b = coin(rng) ? 1 : 0;
        }
        out.points.push_back(Point::bits(std::move(bits)));
        break;
      }
      case Family::Ranking: {
        std::vector<int> order(size);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        out.points.push_back(Point::ranking(std::move(order)));
        break;
      }
    }
  }
  return out;
}

json point_to_json(const Point& p) {
  switch (p.family()) {
    case Family::Euclidean: {
      const auto c = p.coords();
      return json(std::vector<double>(c.begin(), c.end()));
    }
    case Family::Binary: {
      std::string s;
      for (int b : p.entries()) s += b ? '1' : '0';
      return s;
    }
    case Family::Ranking: {
      const auto e = p.entries();
      return json(std::vector<int>(e.begin(), e.end()));
    }
  }
  return nullptr;
}

Point point_from_json(const SpaceSpec& space, const json& j, const std::vector<std::string>& names) {
  Point p;
  switch (space.family) {
    case Family::Euclidean:
      if (j.is_number()) {
        p = Point::real({j.get<double>()});
      } else if (j.is_array()) {
        std::vector<double> c;
        for (const auto& x : j) {
          if (!x.is_number()) throw ParseError("euclidean point holds a non-number: " + x.dump());
          c.push_back(x.get<double>());
        }
        p = Point::real(std::move(c));
      } else {
        throw ParseError("euclidean point must be a number array: " + j.dump());
      }
      break;
    case Family::Binary: {
      std::vector<int> bits;
      if (j.is_string()) {
        for (char ch : j.get<std::string>()) {
          if (ch != '0' && ch != '1') throw ParseError("binary ballot holds '" + std::string(1, ch) + "'");
          bits.push_back(ch - '0');
        }
      } else if (j.is_array()) {
        for (const auto& x : j) {
          if (!x.is_number_integer()) throw ParseError("binary ballot entry is not 0/1: " + x.dump());
          bits.push_back(x.get<int>());
        }
      } else {
        throw ParseError("binary ballot must be a 0/1 string: " + j.dump());
      }
      p = Point::bits(std::move(bits));
      break;
    }
    case Family::Ranking: {
      if (!j.is_array()) throw ParseError("ranking must be an array: " + j.dump());
      std::vector<int> order;
      for (const auto& x : j) {
        if (x.is_number_integer()) {
          order.push_back(x.get<int>());
        } else if (x.is_string()) {
          const auto name = x.get<std::string>();
          if (!names.empty()) {
            const auto it = std::find(names.begin(), names.end(), name);
            if (it == names.end()) throw ParseError("unknown candidate '" + name + "'");
            order.push_back(static_cast<int>(it - names.begin()));
          } else if (name.size() == 1 && name[0] >= 'a' && name[0] <= 'z') {
            order.push_back(name[0] - 'a');
          } else {
            throw ParseError("candidate '" + name + "' needs a candidates list in the space");
          }
        } else {
          throw ParseError("ranking entry must be an index or a name: " + x.dump());
        }
      }
      p = Point::ranking(std::move(order));
      break;
    }
  }
  require_valid(space, p);
  return p;
}

json space_to_json(const SpaceSpec& s) {
  json j;
  j["family"] = std::string(to_string(s.family));
  j["distance"] = std::string(to_string(s.distance));
  if (s.family == Family::Euclidean) {
    j["dimension"] = s.dimension;
    if (s.integer_lattice) j["integer_lattice"] = true;
  } else {
    j["num_candidates"] = s.num_candidates;
    if (s.committee_size) j["committee_size"] = *s.committee_size;
  }
  return j;
}

SpaceSpec space_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("space must be an object");
  try {
    SpaceSpec s;
    s.family = parse_family(j.at("family").get<std::string>());
    s.distance = parse_distance(j.at("distance").get<std::string>());
    if (s.family == Family::Euclidean) {
      s.dimension = j.at("dimension").get<int>();
      s.integer_lattice = j.value("integer_lattice", false);
    } else {
      if (j.contains("num_candidates")) {
        s.num_candidates = j.at("num_candidates").get<int>();
      } else if (j.contains("candidates")) {
        s.num_candidates = static_cast<int>(j.at("candidates").size());
      } else {
        throw ParseError("space needs num_candidates");
      }
      if (j.contains("committee_size") && !j.at("committee_size").is_null())
        s.committee_size = j.at("committee_size").get<int>();
    }
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("space: ") + e.what());
  }
}

std::vector<std::string> candidate_names(const json& space_json) {
  if (!space_json.is_object() || !space_json.contains("candidates")) return {};
  return space_json.at("candidates").get<std::vector<std::string>>();
}

json profile_to_json(const Profile& p) {
  json points = json::array();
  for (const auto& x : p.points) points.push_back(point_to_json(x));
  return {{"space", space_to_json(p.space)}, {"points", points}};
}

Profile profile_from_json(const json& j) {
  if (!j.is_object() || !j.contains("space") || !j.contains("points"))
    throw ParseError("profile needs 'space' and 'points' fields");
  Profile p{space_from_json(j.at("space")), {}};
  const auto names = candidate_names(j.at("space"));
  const auto& pts = j.at("points");
  if (!pts.is_array()) throw ParseError("'points' must be an array");
  if (pts.empty()) throw ParseError("'points' is empty; a profile needs at least one agent");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    try {
      p.points.push_back(point_from_json(p.space, pts[i], names));
    } catch (const Error& e) {
      throw ParseError("points[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return p;
}

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line and column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                     e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path.string());
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << text << '\n';
}

}  // namespace

Profile load_profile(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  try {
    return profile_from_json(j);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_profile(const Profile& profile, const std::filesystem::path& path) {
  write_text(path, profile_to_json(profile).dump(2));
}

std::vector<std::vector<Point>> script_from_json(const SpaceSpec& space, const json& j) {
  if (!j.is_array()) throw ParseError("script must be an array of profiles");
  std::vector<std::vector<Point>> out;
  out.reserve(j.size());
  for (std::size_t it = 0; it < j.size(); ++it) {
    const json& entry = j[it].is_object() && j[it].contains("points") ? j[it].at("points") : j[it];
    if (!entry.is_array()) throw ParseError("script[" + std::to_string(it) + "] is not a profile");
    std::vector<Point> pts;
    for (const auto& x : entry) pts.push_back(point_from_json(space, x));
    out.push_back(std::move(pts));
  }
  return out;
}

json script_to_json(const std::vector<std::vector<Point>>& script) {
  json out = json::array();
  for (const auto& profile : script) {
    json pts = json::array();
    for (const auto& p : profile) pts.push_back(point_to_json(p));
    out.push_back(std::move(pts));
  }
  return out;
}

std::vector<std::vector<Point>> load_script(const SpaceSpec& space,
                                            const std::filesystem::path& path) {
  return script_from_json(space, read_json_file(path));
}

void save_script(const std::vector<std::vector<Point>>& script, const std::filesystem::path& path) {
  write_text(path, script_to_json(script).dump());
}

json record_to_json(const IterationRecord& rec) {
  json profile = json::array();
  for (const auto& p : rec.profile) profile.push_back(point_to_json(p));
  json checks = json::array();
  for (const auto& v : rec.violations) checks.push_back(v.empty() ? json("ok") : json(v));
  std::vector<int> moved(rec.moved.begin(), rec.moved.end());
  return {{"iteration", rec.index}, {"profile", profile},  {"winner", point_to_json(rec.winner)},
          {"distances", rec.distances}, {"moved", moved}, {"checks", checks}};
}

void write_trace_jsonl(std::ostream& os, const RunReport& report) {
  for (const auto& rec : report.trace) os << record_to_json(rec).dump() << '\n';
}

std::string summary_csv_header() {
  return "space,rule,epsilon,seed,outcome,iterations,states,growth_detected,final_winner";
}

std::string summary_csv_row(const SummaryRow& row) {
  std::ostringstream os;
  const RunReport& r = *row.report;
  os << row.space << ',' << row.rule << ',' << row.epsilon << ',' << row.seed << ','
     << to_string(r.outcome) << ',' << r.iterations << ',' << r.states << ','
     << (r.growth_detected ? "true" : "false") << ',';
  if (r.point) {
    os << '"' << to_string(*r.point) << '"';
  }
  return os.str();
}

}  // namespace delib
