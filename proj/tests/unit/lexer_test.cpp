#include <gtest/gtest.h>

#include "c2v/cparse/lexer.hpp"
#include "c2v/util/error.hpp"

namespace c2v::cparse {
namespace {

using K = TokenKind;

std::vector<std::pair<K, std::string>> kinds(std::string_view src) {
  std::vector<std::pair<K, std::string>> out;
  for (const auto& t : tokenize(src)) out.emplace_back(t.kind, t.text);
  return out;
}

TEST(Lexer, Assignment) {
  EXPECT_EQ(kinds("x = 7;"), (std::vector<std::pair<K, std::string>>{
                                 {K::Identifier, "x"},
                                 {K::Operator, "="},
                                 {K::IntegerLiteral, "7"},
                                 {K::Punctuator, ";"}}));
}

TEST(Lexer, ArrowAndCompoundAssignment) {
  EXPECT_EQ(kinds("req->enqueued"), (std::vector<std::pair<K, std::string>>{
                                        {K::Identifier, "req"},
                                        {K::Operator, "->"},
                                        {K::Identifier, "enqueued"}}));
  EXPECT_EQ(kinds("shift &= 63;"), (std::vector<std::pair<K, std::string>>{
                                       {K::Identifier, "shift"},
                                       {K::Operator, "&="},
                                       {K::IntegerLiteral, "63"},
                                       {K::Punctuator, ";"}}));
}

TEST(Lexer, LiteralsAndKeywords) {
  const auto t = tokenize("return 0x1fULL + 1.5e-3f + 'a' + L\"s\\\"t\" >>= ...");
  ASSERT_EQ(t.size(), 10u);
  EXPECT_EQ(t[0].kind, K::Keyword);
  EXPECT_EQ(t[1].kind, K::IntegerLiteral);
  EXPECT_EQ(t[1].text, "0x1fULL");
  EXPECT_EQ(t[3].kind, K::FloatLiteral);
  EXPECT_EQ(t[5].kind, K::CharLiteral);
  EXPECT_EQ(t[7].kind, K::StringLiteral);
  EXPECT_EQ(t[7].text, "L\"s\\\"t\"");
  EXPECT_EQ(t[8].text, ">>=");
  EXPECT_EQ(t[9].kind, K::Punctuator);
}

TEST(Lexer, PositionsAreOneBased) {
  const auto t = tokenize("a\n  b");
  EXPECT_EQ(t[0].position, (Position{1, 1}));
  EXPECT_EQ(t[1].position, (Position{2, 3}));
}

TEST(Lexer, DropsCommentsAndDirectives) {
  const auto t = tokenize(
      "#include <stdio.h>\n"
      "#define M(x) \\\n  (x + 1)\n"
      "a /* b */ c // d\n"
      "  # if 0\n"
      "e");
  std::vector<std::string> texts;
  for (const auto& tok : t) texts.push_back(tok.text);
  EXPECT_EQ(texts, (std::vector<std::string>{"a", "c", "e"}));
}

TEST(Lexer, Errors) {
  for (const char* bad : {"\"open", "'x", "/* never closed", "a @ b", "x = \"a\nb\""}) {
    try {
      tokenize(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::LexError) << bad;
    }
  }
}

TEST(Lexer, ErrorCarriesPosition) {
  try {
    tokenize("int a;\n  `");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("2:3"), std::string::npos) << e.what();
  }
}

}  // namespace
}  // namespace c2v::cparse
