#include <gtest/gtest.h>

#include "c2v/cparse/ast_json.hpp"
#include "c2v/cparse/parser.hpp"
#include "c2v/util/error.hpp"

namespace c2v::cparse {
namespace {

TEST(AstJson, RoundTripsParsedFunction) {
  const auto ast = parse_function_source("int f(int a) { if (a) return a + 1; return 0; }");
  const auto doc = to_json_document(ast);
  EXPECT_EQ(doc.at("ast_format"), 1);
  EXPECT_EQ(ast_from_json(doc), ast);
  EXPECT_EQ(ast_from_json_text(doc.dump()), ast);
  EXPECT_EQ(ast_from_json(doc.at("root")), ast);
}

TEST(AstJson, AcceptsExternalTree) {
  const auto ast = ast_from_json_text(R"({"kind":"FunctionDef","children":[
      {"kind":"AssignExpr","children":[{"kind":"NameExpr","value":"x"},
                                       {"kind":"IntegerLiteralExpr","value":"7"}]}]})");
  EXPECT_EQ(to_sexpr(ast.root),
            "FunctionDef(AssignExpr(NameExpr[x] IntegerLiteralExpr[7]))");
}

TEST(AstJson, RejectsSchemaViolations) {
  for (const char* bad : {
           R"({"kind":"Block","children":[{"kind":"A","value":"x"}]})",
           R"({"kind":"FunctionDef","value":"x","children":[{"kind":"A","value":"y"}]})",
           R"({"kind":"FunctionDef","children":[]})",
           R"({"kind":"FunctionDef","children":[{"kind":"A"}]})",
           R"({"kind":"FunctionDef","children":[{"kind":"A","value":""}]})",
           R"({"kind":"FunctionDef","children":[{"value":"x"}]})",
           R"({"ast_format":2,"root":{"kind":"FunctionDef","children":[{"kind":"A","value":"x"}]}})",
           R"([1,2])",
           R"({)",
       }) {
    try {
      ast_from_json_text(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError) << bad;
    }
  }
}

}  // namespace
}  // namespace c2v::cparse
