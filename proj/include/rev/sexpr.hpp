#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rev/error.hpp"

namespace rev::sexpr {

/// Minimal s-expression reader shared by the PDDL and formula front ends.
/// Symbols are runs of characters other than whitespace, parentheses and ';';
/// comments run from ';' to end of line.
struct Node {
    enum class Kind { list, symbol };

    Kind kind = Kind::symbol;
    std::string text;        // symbol spelling (kind == symbol)
    std::vector<Node> items; // children (kind == list)
    std::size_t line = 1;
    std::size_t col = 1;

    bool is_symbol(std::string_view s) const { return kind == Kind::symbol && text == s; }
};

inline std::vector<Node> parse(const std::string& text, const std::string& origin) {
    std::size_t pos = 0, line = 1, col = 1;

    auto advance = [&] {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    };
    auto skip_blanks = [&] {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == ';') {
                while (pos < text.size() && text[pos] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    };

    std::vector<Node> roots;
    std::vector<Node*> stack; // open lists

    skip_blanks();
    while (pos < text.size()) {
        std::size_t at_line = line, at_col = col;
        char c = text[pos];
        if (c == '(') {
            advance();
            Node open;
            open.kind = Node::Kind::list;
            open.line = at_line;
            open.col = at_col;
            if (stack.empty()) {
                roots.push_back(std::move(open));
                stack.push_back(&roots.back());
            } else {
                stack.back()->items.push_back(std::move(open));
                stack.push_back(&stack.back()->items.back());
            }
        } else if (c == ')') {
            if (stack.empty())
                throw ParseError(origin, at_line, at_col, "unmatched ')'");
            advance();
            stack.pop_back();
        } else {
            std::string sym;
            while (pos < text.size()) {
                char t = text[pos];
                if (t == '(' || t == ')' || t == ';' ||
                    std::isspace(static_cast<unsigned char>(t)))
                    break;
                sym += t;
                advance();
            }
            Node leaf;
            leaf.kind = Node::Kind::symbol;
            leaf.text = std::move(sym);
            leaf.line = at_line;
            leaf.col = at_col;
            if (stack.empty())
                roots.push_back(std::move(leaf));
            else
                stack.back()->items.push_back(std::move(leaf));
        }
        skip_blanks();
    }
    if (!stack.empty())
        throw ParseError(origin, line, col, "unexpected end of input: '(' left open");
    return roots;
}

} // namespace rev::sexpr
