// SPDX-License-Identifier: Apache-2.0
//
// dpbound - capacity bounds for compound vector dirty paper channels
// Copyright (C) 2026 The dpbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#pragma once

#include "dpbound/adversary.hpp"
#include "dpbound/baselines.hpp"
#include "dpbound/bound_general.hpp"
#include "dpbound/bound_rank1.hpp"
#include "dpbound/channel_model.hpp"
#include "dpbound/dof.hpp"
#include "dpbound/errors.hpp"
#include "dpbound/linalg.hpp"
#include "dpbound/model_io.hpp"
#include "dpbound/oracle.hpp"
#include "dpbound/spectral.hpp"
#include "dpbound/sweep.hpp"
