#pragma once

#include <stdexcept>
#include <string>

namespace hol {

// Base error; kind() is the stable name printed by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define HOL_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& what) : Error(#Name, what) {}      \
    };

HOL_DEFINE_ERROR(NonGeneric)
HOL_DEFINE_ERROR(SubgroupViolation)
HOL_DEFINE_ERROR(InconsistentDressing)
HOL_DEFINE_ERROR(BackendMismatch)
HOL_DEFINE_ERROR(InvalidGroup)
HOL_DEFINE_ERROR(ParseError)
HOL_DEFINE_ERROR(SignatureMismatch)
HOL_DEFINE_ERROR(PatternMismatch)
HOL_DEFINE_ERROR(UnderDetermined)
HOL_DEFINE_ERROR(InvalidColoring)
HOL_DEFINE_ERROR(SingularR)
HOL_DEFINE_ERROR(ShapeMismatch)
HOL_DEFINE_ERROR(NonEmptyBoundary)
HOL_DEFINE_ERROR(InputError)

#undef HOL_DEFINE_ERROR

}  // namespace hol
