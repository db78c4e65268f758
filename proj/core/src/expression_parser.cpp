// Recursive-descent parser for the real phase expressions psi(t).
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?
//   atom   := number | 't' | 'pi' | 'e' | name '(' expr ')' | '(' expr ')'

#include "finsec/errors.hpp"
#include "finsec/symbols.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>

namespace finsec {

struct ScalarExpression::Node {
    enum Kind { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Call } kind;
    double value = 0.0;
    double (*fn)(double) = nullptr;
    std::shared_ptr<const Node> lhs, rhs;

    double eval(double t) const {
        switch (kind) {
            case Num: return value;
            case Var: return t;
            case Neg: return -lhs->eval(t);
            case Add: return lhs->eval(t) + rhs->eval(t);
            case Sub: return lhs->eval(t) - rhs->eval(t);
            case Mul: return lhs->eval(t) * rhs->eval(t);
            case Div: return lhs->eval(t) / rhs->eval(t);
            case Pow: return std::pow(lhs->eval(t), rhs->eval(t));
            case Call: return fn(lhs->eval(t));
        }
        return 0.0;
    }
};

namespace {

using NodePtr = std::shared_ptr<const ScalarExpression::Node>;

const std::map<std::string, double (*)(double)>& functions() {
    static const std::map<std::string, double (*)(double)> f{
        {"sin", [](double x) { return std::sin(x); }},   {"cos", [](double x) { return std::cos(x); }},
        {"tan", [](double x) { return std::tan(x); }},   {"exp", [](double x) { return std::exp(x); }},
        {"log", [](double x) { return std::log(x); }},   {"sqrt", [](double x) { return std::sqrt(x); }},
        {"abs", [](double x) { return std::abs(x); }},   {"atan", [](double x) { return std::atan(x); }},
        {"sinh", [](double x) { return std::sinh(x); }}, {"cosh", [](double x) { return std::cosh(x); }},
        {"tanh", [](double x) { return std::tanh(x); }},
    };
    return f;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse() {
        auto n = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return n;
    }

private:
    using Node = ScalarExpression::Node;

    [[noreturn]] void fail(const std::string& what) const {
        throw DomainError("expression '" + s_ + "': " + what + " at offset " + std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    static NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->lhs = std::move(a);
        n->rhs = std::move(b);
        return n;
    }
    static NodePtr number(double v) {
        auto n = std::make_shared<Node>();
        n->kind = Node::Num;
        n->value = v;
        return n;
    }

    NodePtr expr() {
        auto n = term();
        for (;;) {
            if (eat('+')) n = make(Node::Add, n, term());
            else if (eat('-')) n = make(Node::Sub, n, term());
            else return n;
        }
    }
    NodePtr term() {
        auto n = unary();
        for (;;) {
            if (eat('*')) n = make(Node::Mul, n, unary());
            else if (eat('/')) n = make(Node::Div, n, unary());
            else return n;
        }
    }
    NodePtr unary() {
        if (eat('-')) return make(Node::Neg, unary());
        if (eat('+')) return unary();
        return power();
    }
    NodePtr power() {
        auto base = atom();
        if (eat('^')) return make(Node::Pow, base, unary());
        return base;
    }
    NodePtr atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        if (eat('(')) {
            auto n = expr();
            if (!eat(')')) fail("missing ')'");
            return n;
        }
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            const double v = std::strtod(s_.c_str() + pos_, &end);
            if (end == s_.c_str() + pos_) fail("bad number");
            pos_ = static_cast<std::size_t>(end - s_.c_str());
            return number(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            const std::string name = s_.substr(start, pos_ - start);
            if (name == "t" || name == "x") return make(Node::Var);
            if (name == "pi") return number(std::numbers::pi);
            if (name == "e") return number(std::numbers::e);
            const auto it = functions().find(name);
            if (it == functions().end()) fail("unknown identifier '" + name + "'");
            if (!eat('(')) fail("expected '(' after " + name);
            auto arg = expr();
            if (!eat(')')) fail("missing ')'");
            auto n = std::make_shared<Node>();
            n->kind = Node::Call;
            n->fn = it->second;
            n->lhs = std::move(arg);
            return n;
        }
        fail(std::string("unexpected '") + c + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

ScalarExpression::ScalarExpression(const std::string& text) : text_(text), root_(Parser(text_).parse()) {}

double ScalarExpression::operator()(double t) const { return root_->eval(t); }

}  // namespace finsec
