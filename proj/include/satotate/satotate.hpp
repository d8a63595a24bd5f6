#pragma once

#include "satotate/error.hpp"
#include "satotate/weight_lattice.hpp"
#include "satotate/character_algebra.hpp"
#include "satotate/satake.hpp"
#include "satotate/sato_tate_sampler.hpp"
#include "satotate/gl3_error_bound.hpp"
#include "satotate/family_harness.hpp"
#include "satotate/gl3_rate_report.hpp"
#include "satotate/family_io.hpp"
