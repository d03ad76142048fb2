#ifndef OPOT_FIXTURES_HPP
#define OPOT_FIXTURES_HPP

#include <vector>

#include "opot/layered.hpp"
#include "opot/schur.hpp"

namespace opot::fixtures {

/// d = 1, four nonzero parameters.
SchurData schur_d1();
/// d = 2, four nonzero parameters, alternating allocation.
SchurData schur_d2();
/// d = 3, six nonzero parameters, cyclic allocation.
SchurData schur_d3();

std::vector<SchurData> all_schur();

/// One interface, impedance step 1 -> 3.
LayeredMedium medium_single();
/// Three interfaces with incommensurate layer widths.
LayeredMedium medium_threelayer();

std::vector<LayeredMedium> all_media();

}  // namespace opot::fixtures

#endif  // OPOT_FIXTURES_HPP
