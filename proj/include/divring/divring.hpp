#pragma once

// Exact computation with division ring extensions presented by structure
// constants: embeddings into matrix rings and their tightness, bimodule
// dimension sequences, and first-order axiom audits on concrete models.

#include "divring/algebra.hpp"
#include "divring/axioms.hpp"
#include "divring/bimodule.hpp"
#include "divring/cli.hpp"
#include "divring/errors.hpp"
#include "divring/extension.hpp"
#include "divring/garcia.hpp"
#include "divring/matrix.hpp"
#include "divring/report.hpp"
#include "divring/rng.hpp"
#include "divring/scalars.hpp"
#include "divring/specfile.hpp"
#include "divring/tightness.hpp"
