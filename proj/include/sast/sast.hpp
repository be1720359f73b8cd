// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The sast authors

#pragma once

#include "sast/analysis.hpp"
#include "sast/chirplab.hpp"
#include "sast/core.hpp"
#include "sast/fft.hpp"
#include "sast/io.hpp"
#include "sast/saft.hpp"
#include "sast/stockwell.hpp"
#include "sast/transform.hpp"
