#ifndef MORIN_ERROR_HPP
#define MORIN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace morin
{

// Caller violated a precondition (bad index, mismatched shapes, malformed input).
class usage_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// A computation could not produce a trustworthy result.
class computation_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace morin

#endif
