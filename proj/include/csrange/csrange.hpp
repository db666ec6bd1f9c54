#pragma once

#include "csrange/analytics.hpp"
#include "csrange/carrier_sensing.hpp"
#include "csrange/error.hpp"
#include "csrange/geometry.hpp"
#include "csrange/harness.hpp"
#include "csrange/interference.hpp"
#include "csrange/packing.hpp"
#include "csrange/rng.hpp"
