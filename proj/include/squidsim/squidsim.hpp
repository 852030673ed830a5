// Copyright 2026 The squidsim Authors
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

#include "squidsim/cavity.hpp"
#include "squidsim/config.hpp"
#include "squidsim/device.hpp"
#include "squidsim/eigensystem.hpp"
#include "squidsim/errors.hpp"
#include "squidsim/hamiltonian.hpp"
#include "squidsim/io.hpp"
#include "squidsim/propagator.hpp"
#include "squidsim/pulse.hpp"
#include "squidsim/rotation.hpp"
#include "squidsim/runner.hpp"
#include "squidsim/state.hpp"
#include "squidsim/transfer.hpp"
