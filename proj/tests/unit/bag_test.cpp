#include <gtest/gtest.h>

#include "c2v/cparse/parser.hpp"
#include "c2v/pathmine/bag.hpp"
#include "c2v/pathmine/md5.hpp"
#include "c2v/util/error.hpp"

namespace c2v::pathmine {
namespace {

TEST(Md5, StandardVectors) {
  EXPECT_EQ(hash_path(""), "d41d8cd98f00b204e9800998ecf8427e");
  EXPECT_EQ(hash_path("abc"), "900150983cd24fb0d6963f7d28e17f72");
  EXPECT_EQ(md5_hex("message digest"), "f96b697d7cb7938d525a2f31aaf161d0");
  EXPECT_EQ(md5_hex("abcdefghijklmnopqrstuvwxyz"), "c3fcd3d76192e4007dfb496cca67e13b");
}

TEST(Md5, AssignmentPathDigest) {
  // Pinned with an independent MD5 implementation.
  EXPECT_EQ(hash_path("NameExpr↑AssignExpr↓IntegerLiteralExpr"),
            "235aea965a3b8c04d01b63c70b6f9539");
}

TEST(NormalizeValue, StringsBecomePlaceholder) {
  EXPECT_EQ(normalize_value("\"hello world\""), "STR");
  EXPECT_EQ(normalize_value("L\"wide\""), "STR");
  EXPECT_EQ(normalize_value("u8\"x\""), "STR");
  EXPECT_EQ(normalize_value("'a'"), "'a'");
  EXPECT_EQ(normalize_value("count"), "count");
  EXPECT_EQ(normalize_value("0x10"), "0x10");
}

TEST(IsC2vSafe, RejectsSeparators) {
  EXPECT_TRUE(is_c2v_safe("x"));
  EXPECT_FALSE(is_c2v_safe(""));
  EXPECT_FALSE(is_c2v_safe("' '"));
  EXPECT_FALSE(is_c2v_safe("','"));
  EXPECT_FALSE(is_c2v_safe("a\tb"));
}

TEST(ExtractBag, AssignmentTriplet) {
  const auto ast = cparse::parse_function_source("void f(){ x = 7; }");
  const auto bag = extract_bag(ast, 3, Label::Vuln, {});
  EXPECT_EQ(bag.sample_id, 3);
  EXPECT_EQ(bag.label, Label::Vuln);
  const PathContext want{"x", "235aea965a3b8c04d01b63c70b6f9539", "7"};
  EXPECT_NE(std::find(bag.contexts.begin(), bag.contexts.end(), want), bag.contexts.end());
}

TEST(ExtractBag, BelowCapKeepsEverything) {
  const auto ast = cparse::parse_function_source("int f(int a) { return a + 1; }");
  BagStats stats;
  const auto bag = extract_bag(ast, 0, Label::Safe, {}, &stats);
  EXPECT_EQ(bag.contexts.size(), enumerate_paths(ast, {}).size());
  EXPECT_EQ(stats.eligible_paths, bag.contexts.size());
}

std::string wide_function(int statements) {
  std::string src = "void f() {";
  for (int i = 0; i < statements; ++i) {
    src += " v" + std::to_string(i) + " = " + std::to_string(i) + ";";
  }
  return src + " }";
}

TEST(ExtractBag, SamplesExactlyCapDeterministically) {
  const auto ast = cparse::parse_function_source(wide_function(60));
  BagStats stats;
  const auto a = extract_bag(ast, 17, Label::Safe, {}, &stats);
  EXPECT_GE(stats.eligible_paths, 500u);
  EXPECT_EQ(a.contexts.size(), 200u);
  EXPECT_EQ(extract_bag(ast, 17, Label::Safe, {}), a);
  EXPECT_NE(extract_bag(ast, 18, Label::Safe, {}).contexts, a.contexts);
  MiningLimits other;
  other.seed = 5;
  EXPECT_NE(extract_bag(ast, 17, Label::Safe, other).contexts, a.contexts);

  // The sample is a subset of the full enumeration, in enumeration order.
  MiningLimits all;
  all.max_contexts = 100000;
  const auto full = extract_bag(ast, 17, Label::Safe, all);
  std::size_t j = 0;
  for (const auto& c : a.contexts) {
    while (j < full.contexts.size() && !(full.contexts[j] == c)) ++j;
    ASSERT_LT(j, full.contexts.size());
    ++j;
  }
}

TEST(ExtractBag, SamplingIsRoughlyUniform) {
  const auto ast = cparse::parse_function_source(wide_function(10));
  MiningLimits limits;
  limits.max_contexts = 10;
  MiningLimits all;
  all.max_contexts = 100000;
  const auto full = extract_bag(ast, 0, Label::Safe, all).contexts;
  ASSERT_GT(full.size(), 40u);
  std::vector<int> hits(full.size(), 0);
  const int trials = 4000;
  for (int id = 0; id < trials; ++id) {
    std::size_t j = 0;
    for (const auto& c : extract_bag(ast, id, Label::Safe, limits).contexts) {
      while (!(full[j] == c)) ++j;
      ++hits[j++];
    }
  }
  const double expected = trials * 10.0 / static_cast<double>(full.size());
  for (int h : hits) EXPECT_NEAR(h, expected, 0.25 * expected);
}

TEST(ExtractBag, StringsAndUnsafeValues) {
  const auto ast = cparse::parse_function_source("void f() { puts(\"a b\"); c = ' '; }");
  BagStats stats;
  const auto bag = extract_bag(ast, 0, Label::Safe, {}, &stats);
  EXPECT_GT(stats.dropped_unsafe, 0u);
  bool saw_str = false;
  for (const auto& c : bag.contexts) {
    EXPECT_TRUE(is_c2v_safe(c.start_value));
    EXPECT_TRUE(is_c2v_safe(c.end_value));
    saw_str = saw_str || c.end_value == "STR" || c.start_value == "STR";
  }
  EXPECT_TRUE(saw_str);
}

TEST(ExtractBag, EmptyBagThrows) {
  cparse::Ast ast{cparse::make_node("FunctionDef", {cparse::make_terminal("NameExpr", "x")})};
  try {
    extract_bag(ast, 0, Label::Safe, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyBag);
  }
}

TEST(ExtractCorpus, SkipsAndWorkerIndependence) {
  std::vector<FunctionSample> samples = {
      {1, "int f(int a) { return a; }", Label::Safe},
      {2, "int g() { asm(\"nop\"); }", Label::Vuln},
      {3, "int h() { x = \"unterminated; }", Label::Safe},
      {4, "void k(){}", Label::Safe},
      {5, wide_function(30), Label::Vuln},
  };
  const auto one = extract_corpus(samples, {}, 1);
  const auto four = extract_corpus(samples, {}, 4);
  EXPECT_EQ(one.bags, four.bags);
  ASSERT_EQ(one.bags.size(), 2u);
  EXPECT_EQ(one.bags[0].sample_id, 1);
  EXPECT_EQ(one.bags[1].sample_id, 5);
  ASSERT_EQ(one.skipped.size(), 3u);
  EXPECT_EQ(one.skipped[0].sample_id, 2);
  EXPECT_EQ(one.skipped[0].kind, ErrorKind::ParseUnsupported);
  EXPECT_EQ(one.skipped[1].kind, ErrorKind::LexError);
  EXPECT_EQ(one.skipped[2].kind, ErrorKind::ParseUnsupported);
}

}  // namespace
}  // namespace c2v::pathmine
