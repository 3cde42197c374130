#include <charconv>
#include <string>

#include "ssg/errors.hpp"
#include "ssg/graph.hpp"

namespace ssg {

namespace {

std::vector<int> parse_int_list(std::string_view text, std::string_view family) {
  std::vector<int> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto token = text.substr(0, comma);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw DomainError("bad integer '" + std::string(token) + "' in " + std::string(family) +
                        " generator");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

RootedGraph make_line(int left, int right) {
  if (left < 1 || right < 1) {
    throw DomainError("line needs at least one edge on each side of the root");
  }
  std::vector<std::string> vertices{"O"};
  std::vector<EdgeSpec> edges;
  for (int i = 1; i <= left; ++i) {
    vertices.push_back("L" + std::to_string(i));
    edges.push_back({"l" + std::to_string(i), i == 1 ? "O" : "L" + std::to_string(i - 1),
                     "L" + std::to_string(i)});
  }
  for (int i = 1; i <= right; ++i) {
    vertices.push_back("R" + std::to_string(i));
    edges.push_back({"r" + std::to_string(i), i == 1 ? "O" : "R" + std::to_string(i - 1),
                     "R" + std::to_string(i)});
  }
  return RootedGraph(std::move(vertices), edges, "O");
}

RootedGraph make_path(int length) {
  if (length < 1) throw DomainError("path needs at least one edge");
  std::vector<std::string> vertices{"O"};
  std::vector<EdgeSpec> edges;
  for (int i = 1; i <= length; ++i) {
    vertices.push_back("P" + std::to_string(i));
    edges.push_back({"e" + std::to_string(i), vertices[i - 1], vertices[i]});
  }
  return RootedGraph(std::move(vertices), edges, "O");
}

RootedGraph make_circle(int length) {
  if (length < 3) throw DomainError("circle needs at least 3 edges");
  std::vector<std::string> vertices{"O"};
  for (int i = 1; i < length; ++i) vertices.push_back("c" + std::to_string(i));
  std::vector<EdgeSpec> edges;
  for (int i = 0; i < length; ++i) {
    edges.push_back({"e" + std::to_string(i + 1), vertices[i], vertices[(i + 1) % length]});
  }
  return RootedGraph(std::move(vertices), edges, "O");
}

RootedGraph make_parallel(std::span<const int> lengths) {
  if (lengths.size() < 2) throw DomainError("parallel graph needs at least two paths");
  std::vector<std::string> vertices{"O", "D"};
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const int len = lengths[i];
    if (len < 1) throw DomainError("parallel path lengths must be at least 1");
    const std::string tag = std::to_string(i + 1);
    std::string prev = "O";
    for (int j = 1; j <= len; ++j) {
      std::string next = j == len ? "D" : "v" + tag + "_" + std::to_string(j);
      if (j < len) vertices.push_back(next);
      edges.push_back({"e" + tag + "_" + std::to_string(j), prev, next});
      prev = std::move(next);
    }
  }
  return RootedGraph(std::move(vertices), edges, "O");
}

RootedGraph make_simple_binary_tree() {
  return RootedGraph({"O", "v", "v2", "z", "t"},
                     {{"e1", "O", "v"}, {"e2", "O", "v2"}, {"e21", "v2", "z"}, {"e22", "v2", "t"}},
                     "O");
}

RootedGraph make_tree(std::string_view shape) {
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
  std::vector<std::string> open;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    const char c = shape[i];
    if (c == ' ') continue;
    if (c == '(') {
      if (!vertices.empty() && open.empty()) {
        throw DomainError("tree shape has more than one top-level vertex");
      }
      std::string name = vertices.empty() ? "O" : "v" + std::to_string(vertices.size());
      if (!open.empty()) {
        edges.push_back({"e" + std::to_string(vertices.size()), open.back(), name});
      }
      vertices.push_back(name);
      open.push_back(std::move(name));
    } else if (c == ')') {
      if (open.empty()) throw DomainError("unbalanced ')' in tree shape");
      open.pop_back();
    } else {
      throw DomainError(std::string("unexpected character '") + c + "' in tree shape");
    }
  }
  if (!open.empty() || vertices.empty()) throw DomainError("unbalanced tree shape");
  if (edges.empty()) throw DomainError("tree shape has no edges");
  return RootedGraph(std::move(vertices), edges, "O");
}

RootedGraph generate(std::string_view spec) {
  const auto colon = spec.find(':');
  const auto family = spec.substr(0, colon);
  const auto args = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (family == "simple-binary-tree") return make_simple_binary_tree();
  if (family == "tree" || family == "binary-tree") return make_tree(args);
  const auto values = parse_int_list(args, family);
  if (family == "line") {
    if (values.size() != 2) throw DomainError("line generator takes two lengths");
    return make_line(values[0], values[1]);
  }
  if (family == "circle") {
    if (values.size() != 1) throw DomainError("circle generator takes one length");
    return make_circle(values[0]);
  }
  if (family == "path") {
    if (values.size() != 1) throw DomainError("path generator takes one length");
    return make_path(values[0]);
  }
  if (family == "parallel") return make_parallel(values);
  throw DomainError("unknown graph family '" + std::string(family) + "'");
}

}  // namespace ssg
