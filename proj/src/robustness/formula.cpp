#include "avtest/robustness/formula.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "avtest/error.hpp"

namespace avtest::robustness {

bool Formula::operator==(const Formula& other) const {
    auto same = [](const FormulaPtr& a, const FormulaPtr& b) { return a == b || (a && b && *a == *b); };
    return op == other.op && atom == other.atom && interval == other.interval && same(lhs, other.lhs) &&
           same(rhs, other.rhs);
}

namespace {

FormulaPtr make(Op op, FormulaPtr lhs, FormulaPtr rhs = nullptr, std::optional<TimeInterval> interval = std::nullopt) {
    auto f = std::make_shared<Formula>();
    f->op = op;
    f->lhs = std::move(lhs);
    f->rhs = std::move(rhs);
    f->interval = interval;
    return f;
}

void check_interval(const std::optional<TimeInterval>& i) {
    if (i && !(i->lo >= 0.0 && i->lo <= i->hi && std::isfinite(i->lo) && !std::isnan(i->hi)))
        throw ValidationError("interval bounds must satisfy 0 <= lo <= hi");
}

}  // namespace

FormulaPtr atom(std::string name) {
    auto f = std::make_shared<Formula>();
    f->atom = std::move(name);
    return f;
}
FormulaPtr negation(FormulaPtr f) { return make(Op::NOT, std::move(f)); }
FormulaPtr conjunction(FormulaPtr a, FormulaPtr b) { return make(Op::AND, std::move(a), std::move(b)); }
FormulaPtr disjunction(FormulaPtr a, FormulaPtr b) { return make(Op::OR, std::move(a), std::move(b)); }
FormulaPtr implication(FormulaPtr a, FormulaPtr b) { return make(Op::IMPLIES, std::move(a), std::move(b)); }
FormulaPtr always(FormulaPtr f, std::optional<TimeInterval> interval) {
    check_interval(interval);
    return make(Op::ALWAYS, std::move(f), nullptr, interval);
}
FormulaPtr eventually(FormulaPtr f, std::optional<TimeInterval> interval) {
    check_interval(interval);
    return make(Op::EVENTUALLY, std::move(f), nullptr, interval);
}
FormulaPtr until(FormulaPtr a, FormulaPtr b, std::optional<TimeInterval> interval) {
    check_interval(interval);
    return make(Op::UNTIL, std::move(a), std::move(b), interval);
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    FormulaPtr parse() {
        auto f = parse_implies();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("formula: " + what + " at position " + std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(std::string_view tok) {
        skip_ws();
        if (s_.substr(pos_, tok.size()) != tok) return false;
        pos_ += tok.size();
        return true;
    }

    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    // The until keyword: a lone "U" not glued to an identifier.
    bool accept_until() {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != 'U') return false;
        const std::size_t next = pos_ + 1;
        if (next < s_.size() && std::isalnum(static_cast<unsigned char>(s_[next]))) return false;
        if (next < s_.size() && s_[next] == '_' && !(next + 1 < s_.size() && s_[next + 1] == '[')) return false;
        pos_ = next;
        return true;
    }

    double number() {
        skip_ws();
        if (s_.substr(pos_, 3) == "inf") {
            pos_ += 3;
            return std::numeric_limits<double>::infinity();
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc{}) fail("expected a number");
        pos_ = static_cast<std::size_t>(ptr - s_.data());
        return v;
    }

    std::optional<TimeInterval> interval() {
        if (s_.substr(pos_, 2) != "_[") return std::nullopt;
        pos_ += 2;
        TimeInterval i;
        i.lo = number();
        if (!accept(",")) fail("expected ','");
        i.hi = number();
        if (!accept("]")) fail("expected ']'");
        if (!(i.lo >= 0.0 && i.lo <= i.hi && std::isfinite(i.lo))) fail("interval bounds must satisfy 0 <= lo <= hi");
        return i;
    }

    FormulaPtr parse_implies() {
        auto lhs = parse_or();
        if (accept("->")) return implication(lhs, parse_implies());
        return lhs;
    }

    FormulaPtr parse_or() {
        auto lhs = parse_and();
        while (accept("\\/")) lhs = disjunction(lhs, parse_and());
        return lhs;
    }

    FormulaPtr parse_and() {
        auto lhs = parse_until();
        while (accept("/\\")) lhs = conjunction(lhs, parse_until());
        return lhs;
    }

    FormulaPtr parse_until() {
        auto lhs = parse_unary();
        if (accept_until()) {
            auto i = interval();
            return until(lhs, parse_until(), i);
        }
        return lhs;
    }

    FormulaPtr parse_unary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of formula");
        if (accept("!")) return negation(parse_unary());
        if (accept("[]")) {
            auto i = interval();
            return always(parse_unary(), i);
        }
        if (accept("<>")) {
            auto i = interval();
            return eventually(parse_unary(), i);
        }
        if (accept("(")) {
            auto f = parse_implies();
            if (!accept(")")) fail("expected ')'");
            return f;
        }
        const char c = s_[pos_];
        if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
        const std::size_t start = pos_;
        while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
        std::string name(s_.substr(start, pos_ - start));
        if (name == "U") {
            pos_ = start;
            fail("'U' needs a left operand");
        }
        return atom(std::move(name));
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

std::string format_number(double v) {
    if (std::isinf(v)) return "inf";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string format_interval(const std::optional<TimeInterval>& i) {
    if (!i) return "";
    return "_[" + format_number(i->lo) + "," + format_number(i->hi) + "]";
}

void collect_atoms(const Formula& f, std::vector<std::string>& out) {
    if (f.op == Op::ATOM) {
        if (std::find(out.begin(), out.end(), f.atom) == out.end()) out.push_back(f.atom);
        return;
    }
    if (f.lhs) collect_atoms(*f.lhs, out);
    if (f.rhs) collect_atoms(*f.rhs, out);
}

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Formula& f) {
    switch (f.op) {
        case Op::ATOM: return f.atom;
        case Op::NOT: return "!(" + to_string(*f.lhs) + ")";
        case Op::AND: return "(" + to_string(*f.lhs) + " /\\ " + to_string(*f.rhs) + ")";
        case Op::OR: return "(" + to_string(*f.lhs) + " \\/ " + to_string(*f.rhs) + ")";
        case Op::IMPLIES: return "(" + to_string(*f.lhs) + " -> " + to_string(*f.rhs) + ")";
        case Op::ALWAYS: return "[]" + format_interval(f.interval) + "(" + to_string(*f.lhs) + ")";
        case Op::EVENTUALLY: return "<>" + format_interval(f.interval) + "(" + to_string(*f.lhs) + ")";
        case Op::UNTIL:
            return "(" + to_string(*f.lhs) + " U" + format_interval(f.interval) + " " + to_string(*f.rhs) + ")";
    }
    return {};
}

std::vector<std::string> atom_names(const Formula& f) {
    std::vector<std::string> out;
    collect_atoms(f, out);
    return out;
}

std::size_t formula_size(const Formula& f) {
    return 1 + (f.lhs ? formula_size(*f.lhs) : 0) + (f.rhs ? formula_size(*f.rhs) : 0);
}

}  // namespace avtest::robustness
