#pragma once

#include "numrad/error.hpp"
#include "numrad/tolerances.hpp"
#include "numrad/matrix.hpp"
#include "numrad/spectral.hpp"
#include "numrad/polar.hpp"
#include "numrad/golden.hpp"
#include "numrad/random.hpp"
#include "numrad/numradius.hpp"
#include "numrad/bounds.hpp"
#include "numrad/pointwise.hpp"
#include "numrad/ensembles.hpp"
#include "numrad/io.hpp"
#include "numrad/report.hpp"
#include "numrad/campaign.hpp"
