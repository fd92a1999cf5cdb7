// Copyright 2026 The lw Authors
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

#include <Eigen/Core>

// Every numeric threshold of the simulated world lives here.
namespace lw::world::constants {

inline constexpr int kHorizon = 500;

// Gripper displacement per step at full command (meters).
inline constexpr double kStepScale = 0.02;
// Maximum change of gripper closure per step.
inline constexpr double kClosureRate = 0.25;

inline constexpr double kGraspRadius = 0.04;
inline constexpr double kAttachClosure = 0.7;
inline constexpr double kDetachClosure = 0.3;
// A gripper at or above this closure drags jointed handles.
inline constexpr double kDragClosure = 0.5;
// Lateral capture radius of pushable joints (buttons).
inline constexpr double kPushRadius = 0.04;

inline constexpr double kSuccessRadius = 0.05;
inline constexpr double kJointOpenFraction = 0.9;
inline constexpr double kJointClosedFraction = 0.1;

inline constexpr double kTableHeight = 0.0;

inline const Eigen::Vector3d kWorkspaceLo{-0.5, 0.3, 0.0};
inline const Eigen::Vector3d kWorkspaceHi{0.5, 1.0, 0.35};

inline const Eigen::Vector3d kGripperStartLo{-0.05, 0.40, 0.20};
inline const Eigen::Vector3d kGripperStartHi{0.05, 0.45, 0.25};

// Attached objects ride at gripper_pos + kGraspOffset.
inline const Eigen::Vector3d kGraspOffset{0.0, 0.0, 0.0};

// Fixed scene objects that exist in every task.
inline const Eigen::Vector3d kTablePosition{0.0, 0.65, 0.0};
inline const Eigen::Vector3d kWallPosition{0.0, 0.72, 0.12};

}  // namespace lw::world::constants
