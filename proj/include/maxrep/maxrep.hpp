#pragma once

// Computing with maximal representations of surface groups into Sp(2n,R):
// Maslov indices, Toledo invariants, Siegel-space geometry, limit-curve
// sampling and the boundary verification suites.

#include "maxrep/boundary.hpp"
#include "maxrep/eigen.hpp"
#include "maxrep/fuchsian.hpp"
#include "maxrep/io.hpp"
#include "maxrep/maslov.hpp"
#include "maxrep/matrix.hpp"
#include "maxrep/rational.hpp"
#include "maxrep/representations.hpp"
#include "maxrep/rng.hpp"
#include "maxrep/siegel.hpp"
#include "maxrep/signature.hpp"
#include "maxrep/symplectic.hpp"
#include "maxrep/toledo.hpp"
#include "maxrep/tolerance.hpp"
#include "maxrep/words.hpp"
