#pragma once

#include "tnum/series.hpp"
#include "tnum/xpoly.hpp"

#include <vector>

namespace tnum {

/// A root of `defining` in F_q((T^{-1})). The root is exact when it is a
/// finite series, otherwise known through the requested horizon.
struct RootDescriptor {
    XPoly defining;
    Series root;
    unsigned multiplicity = 1;
    QPow height_bound;
    long degree_bound = 0;
};

struct RootOptions {
    unsigned max_depth = 64;
};

// Roots of P lying in F_q((T^{-1})) with multiplicities, sorted by their
// coefficient maps. Roots needing ramification or a residue extension are
// left out.
std::vector<RootDescriptor> roots_in_field(const XPoly& p, long horizon, const RootOptions& options = {});

// Hasse derivative (1/k!) d^k P / dX^k.
XPoly hasse_derivative(const XPoly& p, std::size_t k);

} // namespace tnum
