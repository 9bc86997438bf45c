#pragma once

#include "softdrive/hydraulics.hpp"
#include "softdrive/valve.hpp"
#include "softdrive/tip_map.hpp"
#include "softdrive/plant.hpp"
#include "softdrive/reference.hpp"
#include "softdrive/sensor.hpp"
#include "softdrive/controllers.hpp"
#include "softdrive/config.hpp"
#include "softdrive/simulation.hpp"
#include "softdrive/metrics.hpp"
#include "softdrive/trace_io.hpp"
#include "softdrive/experiments.hpp"
