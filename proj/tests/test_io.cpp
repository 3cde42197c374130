#include <gtest/gtest.h>

#include "ssg/errors.hpp"
#include "ssg/io.hpp"

using namespace ssg;

TEST(Io, ParsesInstance) {
  const auto inst = parse_instance(R"({"vertices": ["O", "a", "b"], "root": "O",
    "edges": [{"id": "x", "ends": ["O", "a"], "p": 0.5}, {"id": "y", "ends": ["a", "b"]}]})");
  EXPECT_EQ(inst.graph.num_edges(), 2);
  EXPECT_EQ(inst.params[0], 0.5);
  EXPECT_EQ(inst.params[1], 1.0);
}

TEST(Io, RoundTrip) {
  const RootedGraph g = make_simple_binary_tree();
  const ActivationParams params(g, 0.3);
  const auto again = parse_instance(instance_to_json(g, &params).dump());
  EXPECT_EQ(again.graph.num_edges(), 4);
  EXPECT_EQ(again.graph.edge(2).id, g.edge(2).id);
  EXPECT_DOUBLE_EQ(again.params[3], 0.3);
}

TEST(Io, SyntaxErrorPosition) {
  try {
    parse_instance("{\n  \"vertices\": [\"O\",\n  ]\n}");
    FAIL() << "no exception";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Io, SchemaErrorPosition) {
  try {
    parse_instance("{\"vertices\": [\"O\", \"a\"], \"root\": \"O\",\n \"edges\": [{\"id\": \"x\", \"ends\": [\"O\", \"a\"], \"p\": 1.5}]}");
    FAIL() << "no exception";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 1u);
  }
  EXPECT_THROW(parse_instance(R"({"vertices": ["O"], "root": "O", "edges": [{"id": "x", "ends": ["O", "q"]}]})"),
               ParseError);
  EXPECT_THROW(parse_instance(R"({"vertices": ["O"], "edges": []})"), ParseError);
}

TEST(Io, NumberFormatting) {
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(4.0), "4");
  const auto j = round_numbers(nlohmann::json{{"x", 2.0 / 3.0}, {"v", {1.0 / 7.0}}});
  EXPECT_EQ(j["x"].get<double>(), 0.666666666667);
}
