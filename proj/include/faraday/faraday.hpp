#pragma once

// Umbrella header for the cavity Faraday-rotation spin-readout model.

#include "faraday/constants.hpp"
#include "faraday/feasibility.hpp"
#include "faraday/io.hpp"
#include "faraday/langevin.hpp"
#include "faraday/params.hpp"
#include "faraday/polarization.hpp"
#include "faraday/readout_mc.hpp"
#include "faraday/reflectance.hpp"
#include "faraday/specs.hpp"
#include "faraday/sweeps.hpp"
