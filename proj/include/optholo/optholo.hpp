// Copyright 2026 The optholo Authors
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

#include "optholo/circuit.hpp"
#include "optholo/connection.hpp"
#include "optholo/diagnostics.hpp"
#include "optholo/error_model.hpp"
#include "optholo/fock.hpp"
#include "optholo/holonomy.hpp"
#include "optholo/io.hpp"
#include "optholo/kicked.hpp"
#include "optholo/linalg.hpp"
#include "optholo/loops.hpp"
