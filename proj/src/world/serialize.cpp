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

#include "lw/world/serialize.hpp"

#include <ostream>

#include "lw/common/error.hpp"
#include "lw/world/world.hpp"

namespace lw::world {

using nlohmann::json;

json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw InvalidArgument("expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json to_json(const WorldState& s) {
  json objects = json::array();
  for (const auto& o : s.objects) {
    json jo = {{"name", o.name}, {"position", to_json(o.position)}, {"graspable", o.graspable}};
    if (o.joint) {
      jo["joint"] = {{"base", to_json(o.joint->base)}, {"axis", to_json(o.joint->axis)},
                     {"value", o.joint->value},       {"lo", o.joint->lo},
                     {"hi", o.joint->hi},             {"pushable", o.joint->pushable}};
    }
    if (o.anchor) {
      jo["anchor"] = {{"target", o.anchor->target}, {"offset", to_json(o.anchor->offset)}};
    }
    objects.push_back(std::move(jo));
  }
  return {{"gripper_pos", to_json(s.gripper_pos)},
          {"gripper_closure", s.gripper_closure},
          {"attached", s.attached ? json(*s.attached) : json(nullptr)},
          {"objects", std::move(objects)},
          {"goal_pos", to_json(s.goal_pos)},
          {"step_index", s.step_index}};
}

WorldState state_from_json(const json& j) {
  try {
    WorldState s;
    s.gripper_pos = vec3_from_json(j.at("gripper_pos"));
    s.gripper_closure = j.at("gripper_closure").get<double>();
    if (j.contains("attached") && !j["attached"].is_null()) {
      s.attached = j["attached"].get<std::string>();
    }
    for (const auto& jo : j.at("objects")) {
      ObjectState o;
      o.name = jo.at("name").get<std::string>();
      o.position = vec3_from_json(jo.at("position"));
      o.graspable = jo.value("graspable", false);
      if (jo.contains("joint")) {
        const auto& jj = jo["joint"];
        JointState js;
        js.base = vec3_from_json(jj.at("base"));
        js.axis = vec3_from_json(jj.at("axis"));
        js.value = jj.at("value").get<double>();
        js.lo = jj.at("lo").get<double>();
        js.hi = jj.at("hi").get<double>();
        js.pushable = jj.value("pushable", false);
        o.joint = js;
      }
      if (jo.contains("anchor")) {
        o.anchor = Anchor{jo["anchor"].at("target").get<std::string>(),
                          vec3_from_json(jo["anchor"].at("offset"))};
      }
      s.objects.push_back(std::move(o));
    }
    s.goal_pos = vec3_from_json(j.at("goal_pos"));
    s.step_index = j.value("step_index", 0);
    return s;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed world state: ") + e.what());
  }
}

json to_json(const Action& a) {
  return json::array({a.move.x(), a.move.y(), a.move.z(), a.grip});
}

Action action_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw InvalidArgument("expected a 4-vector action");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

json to_json(const Observation& obs) {
  json out = json::array();
  for (int i = 0; i < obs.size(); ++i) out.push_back(obs[i]);
  return out;
}

Observation observation_from_json(const json& j) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(kObservationDim)) {
    throw InvalidArgument("expected a 14-vector observation");
  }
  Observation obs;
  for (int i = 0; i < kObservationDim; ++i) obs[i] = j[static_cast<std::size_t>(i)].get<double>();
  return obs;
}

json to_json(const TaskSpec& t) {
  json objects = json::array();
  for (const auto& o : t.objects) {
    json jo = {{"name", o.name},
               {"init", {{"lo", to_json(o.init.lo)}, {"hi", to_json(o.init.hi)}}},
               {"graspable", o.graspable}};
    if (o.relative_to) jo["relative_to"] = *o.relative_to;
    if (o.joint) {
      jo["joint"] = {{"axis", to_json(o.joint->axis)}, {"lo", o.joint->lo},
                     {"hi", o.joint->hi},             {"initial", o.joint->initial},
                     {"pushable", o.joint->pushable}};
    }
    if (o.anchor) {
      jo["anchor"] = {{"target", o.anchor->target}, {"offset", to_json(o.anchor->offset)}};
    }
    objects.push_back(std::move(jo));
  }
  json goal = {{"lo", to_json(t.goal.range.lo)}, {"hi", to_json(t.goal.range.hi)}};
  if (t.goal.relative_to) goal["relative_to"] = *t.goal.relative_to;
  return {{"name", t.name},
          {"description", t.description},
          {"set", t.base ? "BASE10" : "FULL20"},
          {"objects", std::move(objects)},
          {"goal", std::move(goal)},
          {"success", t.success.id()},
          {"horizon", t.horizon}};
}

json registry_json(TaskSet set) {
  json tasks = json::array();
  for (const auto& t : list_tasks(set)) tasks.push_back(to_json(t));
  return {{"tasks", std::move(tasks)}};
}

void write_trajectory_jsonl(std::ostream& out, std::span<const WorldState> states,
                            std::span<const Action> actions) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    json rec = {{"t", i},
                {"state", to_json(states[i])},
                {"observation", to_json(observe(states[i]))},
                {"action", i < actions.size() ? to_json(actions[i]) : json(nullptr)}};
    out << rec.dump() << '\n';
  }
}

}  // namespace lw::world
