#include "opot/fixtures.hpp"

namespace opot::fixtures {

SchurData schur_d1() {
    SchurData data;
    data.dim = 1;
    data.r = {{0.0, 0.0}, {0.12, 0.0}, {0.0, -0.15}, {0.18, 0.0}, {0.08, 0.06}};
    data.nu = {1, 1, 1, 1};
    data.validate();
    return data;
}

SchurData schur_d2() {
    SchurData data;
    data.dim = 2;
    data.r = {{0.0, 0.0}, {0.3, 0.0}, {0.0, 0.4}, {-0.25, 0.0}, {0.2, -0.2}};
    data.nu = {1, 2, 1, 2};
    data.validate();
    return data;
}

SchurData schur_d3() {
    SchurData data;
    data.dim = 3;
    data.r = {{0.0, 0.0}, {0.2, 0.0},  {-0.15, 0.0}, {0.0, 0.18},
              {-0.1, 0.0}, {0.12, 0.08}, {0.0, -0.15}};
    data.nu = {1, 2, 3, 1, 2, 3};
    data.validate();
    return data;
}

std::vector<SchurData> all_schur() { return {schur_d1(), schur_d2(), schur_d3()}; }

LayeredMedium medium_single() {
    LayeredMedium m;
    m.b = 2.0;
    m.y = {1.0};
    m.a = {1.0, 3.0};
    m.validate();
    return m;
}

LayeredMedium medium_threelayer() {
    LayeredMedium m;
    m.b = 4.0;
    m.y = {0.3, 1.0, 2.4142135623730951};
    m.a = {1.0, 2.0, 0.8, 1.5};
    m.validate();
    return m;
}

std::vector<LayeredMedium> all_media() { return {medium_single(), medium_threelayer()}; }

}  // namespace opot::fixtures
