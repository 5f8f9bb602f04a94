#ifndef FASE_PARSER_HPP
#define FASE_PARSER_HPP

#include <string>

#include "fase/error.hpp"
#include "fase/term.hpp"

namespace fase {

class ParseError : public FaseError {
public:
    ParseError(const std::string& msg, int line, int col)
        : FaseError("syntax", msg + " at line " + std::to_string(line) + ", column " +
                                  std::to_string(col)),
          line(line),
          col(col) {}

    int line;
    int col;
};

// Parses the .pafas concrete syntax. Duplicate rec binders are alpha-renamed.
TermPtr parse(const std::string& text);

}  // namespace fase

#endif
