/*
Copyright 2026 The holotape Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include "holotape/blocks.hpp"
#include "holotape/causal_tree.hpp"
#include "holotape/codec.hpp"
#include "holotape/configuration.hpp"
#include "holotape/errors.hpp"
#include "holotape/holo_sim.hpp"
#include "holotape/ledger.hpp"
#include "holotape/machine.hpp"
#include "holotape/replay.hpp"
#include "holotape/run.hpp"
#include "holotape/samples.hpp"
#include "holotape/scaling.hpp"
#include "holotape/spacetime.hpp"
#include "holotape/summary.hpp"
#include "holotape/varint.hpp"
#include "holotape/witness.hpp"
