#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lrt {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define LRT_DEFINE_ERROR(Name)                    \
    class Name : public Error {                   \
    public:                                       \
        using Error::Error;                       \
    }

// fields
LRT_DEFINE_ERROR(DivisionByZero);
LRT_DEFINE_ERROR(ContextMismatch);
LRT_DEFINE_ERROR(InvalidContext);

// linalg
LRT_DEFINE_ERROR(ShapeMismatch);
LRT_DEFINE_ERROR(Singular);
LRT_DEFINE_ERROR(IndexOutOfRange);

// lrcore
LRT_DEFINE_ERROR(NotLRPair);
LRT_DEFINE_ERROR(NotLRTriple);
LRT_DEFINE_ERROR(NotInV0);
LRT_DEFINE_ERROR(JInconsistent);
LRT_DEFINE_ERROR(IncompatibleBases);
LRT_DEFINE_ERROR(ZeroScalar);
LRT_DEFINE_ERROR(NotBipartite);
LRT_DEFINE_ERROR(InvalidQ);

// families
LRT_DEFINE_ERROR(InvalidSpec);
LRT_DEFINE_ERROR(NoClosedForm);
LRT_DEFINE_ERROR(ConstructionInconsistent);

// tridiag
LRT_DEFINE_ERROR(NotInSpan);
LRT_DEFINE_ERROR(DependentBasis);
LRT_DEFINE_ERROR(VerificationFailed);

#undef LRT_DEFINE_ERROR

// Raised by the element grammar parser; position is a byte offset into the input.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace lrt
