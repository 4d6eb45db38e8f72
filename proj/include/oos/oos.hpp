// Copyright 2026 The oos Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Everything except the YAML/JSON-backed harness headers (config.hpp,
// experiment.hpp, model_io.hpp), which pull in extra dependencies.

#include "oos/baselines.hpp"
#include "oos/estimation.hpp"
#include "oos/exact_estimates.hpp"
#include "oos/l1_solver.hpp"
#include "oos/model.hpp"
#include "oos/oracle.hpp"
#include "oos/partial_state.hpp"
#include "oos/policy.hpp"
#include "oos/random.hpp"
#include "oos/seq_oos.hpp"
#include "oos/sim_oos.hpp"
#include "oos/synthetic.hpp"
#include "oos/trace.hpp"
