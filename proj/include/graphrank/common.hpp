#ifndef GRAPHRANK_COMMON_HPP_
#define GRAPHRANK_COMMON_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphrank {

// Half-open byte range [begin, end) into some backing string.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
    bool empty() const { return end <= begin; }
    bool operator==(const Span&) const = default;
};

// Malformed input: bad syntax, missing required fields. Messages carry
// file position context (byte offset or line number).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Well-formed input that violates a documented invariant (rank gaps,
// score inversions, duplicate ids, negative grades).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace graphrank

#endif // GRAPHRANK_COMMON_HPP_
