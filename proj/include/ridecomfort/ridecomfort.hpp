/*
 *  Copyright (C) 2026 ridecomfort authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE for more information.
 */

#pragma once

#include "ridecomfort/alignment.hpp"
#include "ridecomfort/core.hpp"
#include "ridecomfort/detect.hpp"
#include "ridecomfort/error.hpp"
#include "ridecomfort/filter.hpp"
#include "ridecomfort/io.hpp"
#include "ridecomfort/pipeline.hpp"
#include "ridecomfort/synth.hpp"
