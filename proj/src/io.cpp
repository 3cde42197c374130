#include "ssg/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "ssg/errors.hpp"

namespace ssg {

namespace {

using nlohmann::json;

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

Position locate(std::string_view text, std::size_t offset) {
  Position pos;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

// Byte offsets of top-level keys and of the elements of top-level arrays.
// Good enough to point a user at the right spot; strings are skipped properly.
class Locator {
 public:
  explicit Locator(std::string_view text) : text_(text) {}

  std::size_t key(std::string_view name) const {
    const std::size_t at = find_top_key(name);
    return at == std::string_view::npos ? 0 : at;
  }

  std::size_t element(std::string_view name, std::size_t index) const {
    std::size_t at = find_top_key(name);
    if (at == std::string_view::npos) return 0;
    at = text_.find('[', at);
    if (at == std::string_view::npos) return 0;
    int depth = 0;
    std::size_t count = 0;
    bool expect = true;
    for (std::size_t i = at + 1; i < text_.size(); ++i) {
      const char c = text_[i];
      if (c == '"') {
        if (depth == 0 && expect) {
          if (count == index) return i;
          ++count;
          expect = false;
        }
        i = skip_string(i);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (depth == 0 && c == ']') break;
      if (depth == 0 && c == ',') {
        expect = true;
        continue;
      }
      if (depth == 0 && expect) {
        if (count == index) return i;
        ++count;
        expect = false;
      }
      if (c == '[' || c == '{') ++depth;
      if (c == ']' || c == '}') --depth;
    }
    return at;
  }

 private:
  std::size_t skip_string(std::size_t i) const {
    for (++i; i < text_.size(); ++i) {
      if (text_[i] == '\\') {
        ++i;
      } else if (text_[i] == '"') {
        return i;
      }
    }
    return i;
  }

  std::size_t find_top_key(std::string_view name) const {
    int depth = 0;
    for (std::size_t i = 0; i < text_.size(); ++i) {
      const char c = text_[i];
      if (c == '"') {
        const std::size_t end = skip_string(i);
        if (depth == 1 && text_.substr(i + 1, end - i - 1) == name) return i;
        i = end;
        continue;
      }
      if (c == '[' || c == '{') ++depth;
      if (c == ']' || c == '}') --depth;
    }
    return std::string_view::npos;
  }

  std::string_view text_;
};

[[noreturn]] void fail(std::string_view text, std::size_t offset, const std::string& what) {
  const Position pos = locate(text, offset);
  throw ParseError(what, pos.line, pos.column);
}

}  // namespace

Instance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // byte is 1-based and points just past the problem
    fail(text, e.byte > 0 ? e.byte - 1 : 0, "malformed JSON");
  }
  const Locator where(text);
  if (!doc.is_object()) fail(text, 0, "instance must be a JSON object");
  for (const char* key : {"vertices", "root", "edges"}) {
    if (!doc.contains(key)) fail(text, 0, std::string("missing \"") + key + "\"");
  }
  if (!doc["vertices"].is_array()) fail(text, where.key("vertices"), "\"vertices\" must be an array");
  if (!doc["root"].is_string()) fail(text, where.key("root"), "\"root\" must be a string");
  if (!doc["edges"].is_array()) fail(text, where.key("edges"), "\"edges\" must be an array");

  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < doc["vertices"].size(); ++i) {
    const auto& v = doc["vertices"][i];
    if (!v.is_string()) fail(text, where.element("vertices", i), "vertex ids must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<EdgeSpec> edges;
  std::vector<double> probs;
  for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
    const auto& e = doc["edges"][i];
    const std::size_t at = where.element("edges", i);
    if (!e.is_object() || !e.contains("id") || !e["id"].is_string()) {
      fail(text, at, "edge needs a string \"id\"");
    }
    if (!e.contains("ends") || !e["ends"].is_array() || e["ends"].size() != 2 ||
        !e["ends"][0].is_string() || !e["ends"][1].is_string()) {
      fail(text, at, "edge \"ends\" must be a pair of vertex ids");
    }
    double p = 1.0;
    if (e.contains("p")) {
      if (!e["p"].is_number()) fail(text, at, "edge \"p\" must be a number");
      p = e["p"].get<double>();
      if (!(p > 0.0 && p <= 1.0)) fail(text, at, "edge \"p\" must lie in (0,1]");
    }
    edges.push_back({e["id"].get<std::string>(), e["ends"][0].get<std::string>(),
                     e["ends"][1].get<std::string>()});
    probs.push_back(p);
  }
  try {
    RootedGraph g(std::move(vertices), edges, doc["root"].get<std::string>());
    ActivationParams params(g, probs);
    return {std::move(g), std::move(params)};
  } catch (const DomainError& err) {
    fail(text, 0, err.what());
  }
}

Instance load_instance(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return parse_instance(text);
}

json instance_to_json(const RootedGraph& g, const ActivationParams* params) {
  json vertices = json::array();
  for (int v = 0; v < g.num_vertices(); ++v) vertices.push_back(g.vertex_name(v));
  json edges = json::array();
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    json item{{"id", ed.id}, {"ends", {g.vertex_name(ed.u), g.vertex_name(ed.v)}}};
    item["p"] = params ? (*params)[e] : 1.0;
    edges.push_back(std::move(item));
  }
  return {{"vertices", vertices}, {"root", g.vertex_name(g.root())}, {"edges", edges}};
}

std::string format_number(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

json round_numbers(const json& j, int digits) {
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (!std::isfinite(x)) return j;
    return std::stod(format_number(x, digits));
  }
  if (j.is_array() || j.is_object()) {
    json out = j;
    for (auto it = out.begin(); it != out.end(); ++it) *it = round_numbers(*it, digits);
    return out;
  }
  return j;
}

}  // namespace ssg
