#ifndef BNSL_ERRORS_HPP
#define BNSL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bnsl {

// File-format problems (CSV, network files, graph JSON). The CLI maps these
// to a different exit code than internal runtime failures.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bnsl

#endif  // BNSL_ERRORS_HPP
