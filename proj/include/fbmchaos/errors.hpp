#pragma once

#include <stdexcept>
#include <string>

namespace fbmchaos {

// Thrown when a quadrature or root-finding routine cannot reach its
// tolerance (panel budget exhausted, tail extrapolation diverging, ...).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fbmchaos
