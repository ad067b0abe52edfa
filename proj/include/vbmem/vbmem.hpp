// Copyright 2026 The vbmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VBMEM_VBMEM_HPP
#define VBMEM_VBMEM_HPP

#include "vbmem/error.hpp"
#include "vbmem/experiment.hpp"
#include "vbmem/fields.hpp"
#include "vbmem/hilbert.hpp"
#include "vbmem/io.hpp"
#include "vbmem/memory.hpp"
#include "vbmem/optics.hpp"
#include "vbmem/photodetection.hpp"
#include "vbmem/pipeline.hpp"
#include "vbmem/security.hpp"
#include "vbmem/tomography.hpp"

#endif  // VBMEM_VBMEM_HPP
