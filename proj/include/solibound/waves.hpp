#pragma once

#include <vector>

#include "solibound/scalar.hpp"

namespace solibound {

/* One exponential term of a wavefunction sum: amplitude times the
   exponential attached to the spectral parameter. */
struct WaveTerm {
    Cx amplitude;
    Cx spectral;
};

using WaveSum = std::vector<WaveTerm>;

inline WaveSum single_wave(Cx amplitude, Cx spectral) { return {WaveTerm{amplitude, spectral}}; }

/* N >= 1 and pairwise distinct spectral parameters. */
void validate_waves(const WaveSum& waves);

}  // namespace solibound
