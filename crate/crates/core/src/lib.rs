// Copyright 2026 The hijack-sim Authors
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


//! Interdomain route propagation under customer/peer/provider policies, and
//! search for announcement strategies that let one AS attract traffic bound
//! for another.

pub mod attacks;
pub mod finders;
pub mod gadgets;
pub mod graph;
pub mod instances;
pub mod routing;
pub mod verify;

pub use graph::{AsGraph, Asn, BgpPath, Edge, Relation, RouteClass};
pub use routing::{simulate, RoutingState};
