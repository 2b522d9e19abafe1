#pragma once

// MTL formulas over named linear predicates.
//
// Text grammar (loosest to tightest):
//   implies := or ( "->" implies )?
//   or      := and ( "\/" and )*
//   and     := until ( "/\" until )*
//   until   := unary ( "U" interval? until )?
//   unary   := "!" unary | "[]" interval? unary | "<>" interval? unary
//            | "(" implies ")" | identifier
//   interval := "_[" number "," (number | "inf") "]"      (seconds)

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace avtest::robustness {

enum class Op { ATOM, NOT, AND, OR, IMPLIES, ALWAYS, EVENTUALLY, UNTIL };

struct TimeInterval {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    bool operator==(const TimeInterval&) const = default;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    Op op = Op::ATOM;
    std::string atom;                       // ATOM only
    std::optional<TimeInterval> interval;   // temporal operators only
    FormulaPtr lhs;                         // unary operand, or left operand
    FormulaPtr rhs;                         // right operand of binary operators

    bool operator==(const Formula& other) const;
};

FormulaPtr atom(std::string name);
FormulaPtr negation(FormulaPtr f);
FormulaPtr conjunction(FormulaPtr a, FormulaPtr b);
FormulaPtr disjunction(FormulaPtr a, FormulaPtr b);
FormulaPtr implication(FormulaPtr a, FormulaPtr b);
FormulaPtr always(FormulaPtr f, std::optional<TimeInterval> interval = std::nullopt);
FormulaPtr eventually(FormulaPtr f, std::optional<TimeInterval> interval = std::nullopt);
FormulaPtr until(FormulaPtr a, FormulaPtr b, std::optional<TimeInterval> interval = std::nullopt);

// Throws ParseError naming the character position of the problem.
FormulaPtr parse_formula(std::string_view text);

// Fully parenthesized; parse_formula(to_string(f)) == f.
std::string to_string(const Formula& f);

// Atom names in first-occurrence order.
std::vector<std::string> atom_names(const Formula& f);
std::size_t formula_size(const Formula& f);

}  // namespace avtest::robustness
