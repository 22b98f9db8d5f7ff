#pragma once

#include "bits.hpp"
#include "codec.hpp"
#include "config.hpp"
#include "construction.hpp"
#include "info.hpp"
#include "io.hpp"
#include "model.hpp"
#include "polar.hpp"
#include "rng.hpp"
#include "sim.hpp"
