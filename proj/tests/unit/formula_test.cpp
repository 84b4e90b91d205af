#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qpl/formula.hpp"

using namespace qpl;
namespace ast = qpl::ast;

namespace {

ErrorCode parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidInput;
}

ErrorCode wf_error(const std::string& text, const Context& ctx, const Environment& env) {
  try {
    check_wellformed(parse(text), ctx, env);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidInput;
}

Environment signature() {
  Environment env;
  env.spaces.emplace("I", uniform_space("I", 2, 0.5, "i"));
  env.spaces.emplace("J", uniform_space("J", 3, 1.0, "j"));
  env.atoms.emplace("r", AtomTable{{"I", "J"}, std::vector<double>(6, 1.0)});
  env.atoms.emplace("f", AtomTable{{"I"}, {1, 2}});
  env.atoms.emplace("c", AtomTable{{}, {3}});
  return env;
}

}  // namespace

TEST(Parse, QuantifiedDivision) {
  const auto f = parse("A^inf (x in X). f(x) -o f(y)");
  const auto* q = f.as<ast::Quant>();
  ASSERT_TRUE(q);
  EXPECT_EQ(q->polarity, Polarity::universal);
  EXPECT_EQ(q->p, kInf);
  EXPECT_EQ(q->var, "x");
  EXPECT_EQ(q->space, "X");
  EXPECT_EQ(q->body, fm::div(fm::atom("f", {"x"}), fm::atom("f", {"y"})));
}

TEST(Parse, ConstantsAndLiterals) {
  EXPECT_EQ(parse("true"), fm::constant(NamedConst::true_));
  EXPECT_EQ(parse("bot"), fm::constant(NamedConst::bot));
  EXPECT_EQ(parse("-inf"), fm::literal(-kInf));
  EXPECT_EQ(parse("2.5e-3"), fm::literal(0.0025));
  EXPECT_EQ(parse("c"), fm::atom("c", {}));
}

TEST(Parse, OperatorsAndPrecedenceRules) {
  EXPECT_EQ(parse_error("f(x) (x) g(x) -o h(x)"), ErrorCode::SyntaxError);
  EXPECT_EQ(parse_error("a (x) b \\/ c"), ErrorCode::SyntaxError);
  EXPECT_EQ(parse_error("a -o b -o c"), ErrorCode::SyntaxError);
  EXPECT_EQ(parse_error("f(x"), ErrorCode::SyntaxError);
  EXPECT_EQ(parse_error("a # b"), ErrorCode::UnknownToken);
  EXPECT_EQ(parse_error("E^-1 (x in X). a"), ErrorCode::SyntaxError);

  const auto chain = parse("a (x) b (x) c");
  EXPECT_EQ(chain, fm::binop(OpCode::tensor, fm::binop(OpCode::tensor, fm::atom("a", {}), fm::atom("b", {})),
                             fm::atom("c", {})));
  EXPECT_EQ(parse("(a (x) b) \\/ c"),
            fm::binop(OpCode::join, fm::binop(OpCode::tensor, fm::atom("a", {}), fm::atom("b", {})),
                      fm::atom("c", {})));
  // "(x)" right after an identifier is an argument list
  EXPECT_EQ(parse("f(x)"), fm::atom("f", {"x"}));
  EXPECT_EQ(parse("f (x) g"), fm::binop(OpCode::tensor, fm::atom("f", {}), fm::atom("g", {})));
  for (OpCode op : kAllOps) {
    const std::string text = "a " + std::string(op_symbol(op)) + " b";
    EXPECT_EQ(parse(text), fm::binop(op, fm::atom("a", {}), fm::atom("b", {}))) << text;
  }
}

TEST(Parse, DualScalarAndGrammarTotality) {
  EXPECT_EQ(parse("a(x)^*"), fm::dual(fm::atom("a", {"x"})));
  EXPECT_EQ(parse("a^*^*"), fm::dual(fm::dual(fm::atom("a", {}))));
  EXPECT_EQ(parse("2 . a"), fm::scalar(2, fm::atom("a", {})));
  EXPECT_EQ(parse("0.5 . a^*"), fm::scalar(0.5, fm::dual(fm::atom("a", {}))));
  EXPECT_EQ(parse_error("inf . a"), ErrorCode::SyntaxError);
  EXPECT_EQ(parse("E^0 (i in I). f(i)"), fm::exists(0, "i", "I", fm::atom("f", {"i"})));
}

TEST(Print, Canonical) {
  EXPECT_EQ(print(fm::constant(NamedConst::true_)), "true");
  EXPECT_EQ(print(fm::dual(fm::atom("a", {"x"}))), "a(x)^*");
  EXPECT_EQ(print(parse("A^inf (x in X).   f(x)  -o f(y)")), "A^inf (x in X). f(x) -o f(y)");
  EXPECT_EQ(print(parse("(a (x) b) (x) c")), "a (x) b (x) c");
  EXPECT_EQ(print(parse("a (x) (b (x) c)")), "a (x) (b (x) c)");
  EXPECT_EQ(print(fm::dual(fm::scalar(2, fm::atom("a", {})))), "(2 . a)^*");
}

TEST(Print, RoundTripOnRandomAsts) {
  oracle::Gen g(31);
  for (int t = 0; t < 1000; ++t) {
    const auto f = oracle::random_ast(g, 5);
    const auto text = print(f);
    Formula back;
    ASSERT_NO_THROW(back = parse(text)) << text;
    EXPECT_EQ(back, f) << text;
    EXPECT_EQ(print(back), text);
  }
}

TEST(Builders, RejectOutOfRangeParameters) {
  EXPECT_THROW(fm::scalar(-1, fm::atom("a", {})), Error);
  EXPECT_THROW(fm::scalar(kInf, fm::atom("a", {})), Error);
  EXPECT_THROW(fm::quant(Polarity::universal, -0.5, "x", "X", fm::atom("a", {})), Error);
  EXPECT_THROW(fm::literal(std::nan("")), Error);
}

TEST(WellFormed, Examples) {
  const auto env = signature();
  EXPECT_NO_THROW(check_wellformed(parse("E^1 (j in J). r(i,j)"), {{"i", "I"}}, env));
  EXPECT_EQ(wf_error("f(z)", {}, env), ErrorCode::UnboundVariable);
  EXPECT_EQ(wf_error("E^1 (j in J). f(j)", {}, env), ErrorCode::AtomArity);
  EXPECT_EQ(wf_error("f(i, i)", {{"i", "I"}}, env), ErrorCode::AtomArity);
  EXPECT_EQ(wf_error("E^1 (i in I). f(i)", {{"i", "I"}}, env), ErrorCode::ShadowedVariable);
  EXPECT_EQ(wf_error("E^1 (k in K). c", {}, env), ErrorCode::UnknownSpace);
  EXPECT_EQ(wf_error("nope", {}, env), ErrorCode::UnknownAtom);
  EXPECT_EQ(wf_error("c", {{"i", "I"}, {"i", "J"}}, env), ErrorCode::ShadowedVariable);
}

TEST(Context, FreeVariablesAndInference) {
  const auto env = signature();
  const auto f = parse("f(i) (x) (E^1 (j in J). r(i2, j))");
  EXPECT_EQ(free_variables(f), (std::vector<std::string>{"i", "i2"}));
  const auto ctx = infer_context(f, env);
  ASSERT_EQ(ctx.size(), 2u);
  EXPECT_EQ(ctx[1].space, "I");
  EXPECT_THROW(infer_context(parse("r(a, a)"), env), Error);
}

TEST(Translate, ConstantsAndInverse) {
  EXPECT_EQ(napier_translate(fm::literal(1), Carrier::add), fm::literal(0));
  EXPECT_EQ(napier_translate(fm::literal(0), Carrier::add), fm::literal(kInf));
  EXPECT_EQ(napier_translate(fm::literal(kInf), Carrier::add), fm::literal(-kInf));
  // named constants keep their name; their value is fixed per carrier
  EXPECT_EQ(napier_translate(fm::constant(NamedConst::true_), Carrier::add), fm::constant(NamedConst::true_));
  EXPECT_EQ(named_const_value(NamedConst::true_, Carrier::mul), kInf);
  EXPECT_EQ(named_const_value(NamedConst::true_, Carrier::add), -kInf);
  EXPECT_EQ(named_const_value(NamedConst::one, Carrier::add), 0.0);
  EXPECT_EQ(named_const_value(NamedConst::false_, Carrier::add), kInf);

  // multiplicative literals must be nonnegative, so flip the sign of the generated ones
  oracle::Gen g(41);
  for (int t = 0; t < 500; ++t) {
    const auto f = map_leaves(
        oracle::random_ast(g, 5),
        [](const ast::Const& c, const Formula& h) { return c.name ? h : fm::literal(std::fabs(c.literal)); },
        [](const ast::Atom&, const Formula& h) { return h; });
    const auto there = napier_translate(f, Carrier::add);
    EXPECT_TRUE(oracle::same_shape(napier_translate(there, Carrier::mul), f, 1e-12)) << print(f);
  }
}

TEST(Translate, CommutesWithRenaming) {
  oracle::Gen g(43);
  for (int t = 0; t < 300; ++t) {
    const auto f = oracle::random_ast(g, 4);
    // "fresh" never occurs in generated ASTs, so no capture
    const auto a = napier_translate(rename_free(f, "x", "fresh"), Carrier::mul);
    const auto b = rename_free(napier_translate(f, Carrier::mul), "x", "fresh");
    EXPECT_EQ(a, b) << print(f);
  }
  EXPECT_THROW(rename_free(parse("E^1 (y in Y). f(x, y)"), "x", "y"), Error);
  EXPECT_EQ(rename_free(parse("E^1 (x in Y). f(x)"), "x", "z"), parse("E^1 (x in Y). f(x)"));
}
