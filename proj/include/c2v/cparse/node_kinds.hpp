#pragma once

#include <array>
#include <string_view>

// Node-kind names emitted by the built-in parser. These strings are hashed
// into path identifiers, so renaming any of them changes every extracted
// dataset and requires bumping kAstFormatVersion.
namespace c2v::cparse::kinds {

inline constexpr int kAstFormatVersion = 1;

// Declarations
inline constexpr std::string_view FunctionDef = "FunctionDef";
inline constexpr std::string_view FunctionName = "FunctionName";
inline constexpr std::string_view ParameterList = "ParameterList";
inline constexpr std::string_view Parameter = "Parameter";
inline constexpr std::string_view VariadicParameter = "VariadicParameter";
inline constexpr std::string_view ParamName = "ParamName";
inline constexpr std::string_view TypeName = "TypeName";
inline constexpr std::string_view DeclStmt = "DeclStmt";
inline constexpr std::string_view VariableDeclarator = "VariableDeclarator";
inline constexpr std::string_view DeclName = "DeclName";
inline constexpr std::string_view ArrayDim = "ArrayDim";
inline constexpr std::string_view InitializerList = "InitializerList";
inline constexpr std::string_view EmptyInitializer = "EmptyInitializer";

// Statements
inline constexpr std::string_view Block = "Block";
inline constexpr std::string_view ExpressionStmt = "ExpressionStmt";
inline constexpr std::string_view IfStmt = "IfStmt";
inline constexpr std::string_view WhileStmt = "WhileStmt";
inline constexpr std::string_view DoStmt = "DoStmt";
inline constexpr std::string_view ForStmt = "ForStmt";
inline constexpr std::string_view ForInit = "ForInit";
inline constexpr std::string_view ForCond = "ForCond";
inline constexpr std::string_view ForUpdate = "ForUpdate";
inline constexpr std::string_view ReturnStmt = "ReturnStmt";
inline constexpr std::string_view BreakStmt = "BreakStmt";
inline constexpr std::string_view ContinueStmt = "ContinueStmt";
inline constexpr std::string_view SwitchStmt = "SwitchStmt";
inline constexpr std::string_view CaseStmt = "CaseStmt";
inline constexpr std::string_view DefaultStmt = "DefaultStmt";
inline constexpr std::string_view GotoStmt = "GotoStmt";
inline constexpr std::string_view LabeledStmt = "LabeledStmt";
inline constexpr std::string_view LabelName = "LabelName";
inline constexpr std::string_view MacroBlockStmt = "MacroBlockStmt";

// Expressions. Operator-bearing kinds are suffixed with ":<operator name>"
// (see operator_name); plain assignment is the bare AssignExpr.
inline constexpr std::string_view AssignExpr = "AssignExpr";
inline constexpr std::string_view BinaryExpr = "BinaryExpr";
inline constexpr std::string_view UnaryExpr = "UnaryExpr";
inline constexpr std::string_view PostfixExpr = "PostfixExpr";
inline constexpr std::string_view ConditionalExpr = "ConditionalExpr";
inline constexpr std::string_view CommaExpr = "CommaExpr";
inline constexpr std::string_view CallExpr = "CallExpr";
inline constexpr std::string_view FieldAccessExpr = "FieldAccessExpr";
inline constexpr std::string_view PointerAccessExpr = "PointerAccessExpr";
inline constexpr std::string_view FieldName = "FieldName";
inline constexpr std::string_view ArrayAccessExpr = "ArrayAccessExpr";
inline constexpr std::string_view CastExpr = "CastExpr";
inline constexpr std::string_view SizeofExpr = "SizeofExpr";
inline constexpr std::string_view NameExpr = "NameExpr";
inline constexpr std::string_view IntegerLiteralExpr = "IntegerLiteralExpr";
inline constexpr std::string_view FloatLiteralExpr = "FloatLiteralExpr";
inline constexpr std::string_view CharLiteralExpr = "CharLiteralExpr";
inline constexpr std::string_view StringLiteralExpr = "StringLiteralExpr";

struct OperatorName {
  std::string_view glyph;
  std::string_view name;
};

// Binary and compound-assignment operators share names: "a += b" is
// AssignExpr:plus, "a + b" is BinaryExpr:plus.
inline constexpr std::array<OperatorName, 28> kBinaryOperators = {{
    {"+", "plus"},           {"-", "minus"},          {"*", "times"},
    {"/", "divide"},         {"%", "remainder"},      {"<<", "left_shift"},
    {">>", "right_shift"},   {"<", "less"},           {">", "greater"},
    {"<=", "less_equals"},   {">=", "greater_equals"}, {"==", "equals"},
    {"!=", "not_equals"},    {"&", "bin_and"},        {"|", "bin_or"},
    {"^", "xor"},            {"&&", "and"},           {"||", "or"},
    {"+=", "plus"},          {"-=", "minus"},         {"*=", "times"},
    {"/=", "divide"},        {"%=", "remainder"},     {"<<=", "left_shift"},
    {">>=", "right_shift"},  {"&=", "bin_and"},       {"|=", "bin_or"},
    {"^=", "xor"},
}};

// Prefix operators; postfix ++/-- reuse the increment/decrement names under
// PostfixExpr.
inline constexpr std::array<OperatorName, 8> kUnaryOperators = {{
    {"+", "positive"}, {"-", "negative"}, {"*", "deref"},
    {"&", "address_of"}, {"!", "not"}, {"~", "inverse"},
    {"++", "increment"}, {"--", "decrement"},
}};

}  // namespace c2v::cparse::kinds
