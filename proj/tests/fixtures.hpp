#pragma once

#include "ppds/pseudo_periodic.hpp"

namespace fixtures {

// Degree-60 set with three genus-2 components in a chain.
inline ppds::PseudoPeriodicDataSet chain60() {
    ppds::PseudoPeriodicDataSet s;
    s.n = 60;
    s.orbits = {
        {ppds::CyclicDataSet{4, 0, 0, {{1, 4}, {3, 4}, {1, 2}, {1, 2}}}, 1},
        {ppds::CyclicDataSet{5, 0, 0, {{4, 5}, {2, 5}, {4, 5}}}, 1},
        {ppds::CyclicDataSet{3, 0, 0, {{1, 3}, {1, 3}, {2, 3}, {2, 3}}}, 1},
    };
    s.annuli = {
        {1, 3, 1, 0, 1, ppds::AnnulusClass::DP},
        {1, -4, -1, 1, 2, ppds::AnnulusClass::DP},
    };
    return s;
}

// The same class after permuting components, reordering cone pairs, and
// flipping annulus endpoints.
inline ppds::PseudoPeriodicDataSet chain60_relabeled() {
    ppds::PseudoPeriodicDataSet s;
    s.n = 60;
    s.orbits = {
        {ppds::CyclicDataSet{5, 0, 0, {{2, 5}, {4, 5}, {4, 5}}}, 1},
        {ppds::CyclicDataSet{3, 0, 0, {{2, 3}, {2, 3}, {1, 3}, {1, 3}}}, 1},
        {ppds::CyclicDataSet{4, 0, 0, {{3, 4}, {1, 2}, {1, 4}, {1, 2}}}, 1},
    };
    s.annuli = {
        {1, 3, 1, 2, 0, ppds::AnnulusClass::DP},
        {1, -4, -1, 0, 1, ppds::AnnulusClass::DP},
    };
    return s;
}

// Genus-2 multitwist data set of degree 6 and its degree-12 square root.
inline ppds::PseudoPeriodicDataSet square6() {
    ppds::PseudoPeriodicDataSet s;
    s.n = 6;
    s.orbits = {
        {ppds::CyclicDataSet{2, 0, 0, {{1, 2}, {1, 2}, {1, 2}, {1, 2}}}, 1},
        {ppds::CyclicDataSet{3, 0, 0, {{2, 3}, {2, 3}, {2, 3}}}, 1},
    };
    s.annuli = {{1, 1, 1, 0, 1, ppds::AnnulusClass::DP}};
    return s;
}

inline ppds::PseudoPeriodicDataSet root12() {
    ppds::PseudoPeriodicDataSet s;
    s.n = 12;
    s.orbits = {
        {ppds::CyclicDataSet{4, 0, 0, {{1, 2}, {1, 4}, {1, 4}}}, 1},
        {ppds::CyclicDataSet{6, 0, 0, {{1, 2}, {2, 3}, {5, 6}}}, 1},
    };
    s.annuli = {{1, 1, 1, 0, 1, ppds::AnnulusClass::DP}};
    return s;
}

} // namespace fixtures
