#pragma once

#include <fstream>
#include <string>
#include <variant>

#include "json.hpp"

#include "entropylab/dfa.hpp"
#include "entropylab/one_counter.hpp"
#include "entropylab/pda.hpp"

namespace entropylab {

using Automaton = std::variant<Dfa, MultiStackPda, OneCounterEps>;

namespace detail {

inline std::size_t state_index(const std::vector<std::string>& states, const std::string& name) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] == name) return i;
  }
  throw Error(ErrorKind::BadSymbol, "unknown state '" + name + "'");
}

inline std::vector<bool> final_flags(const std::vector<std::string>& states, const nlohmann::json& j) {
  std::vector<bool> finals(states.size(), false);
  for (const auto& f : j.at("finals")) finals[state_index(states, f.get<std::string>())] = true;
  return finals;
}

inline int input_index(const Alphabet& input, const std::string& in, bool allow_epsilon) {
  if (in.empty()) {
    if (!allow_epsilon) throw Error(ErrorKind::EpsilonInEpsilonFree, "ε-transition (\"in\": \"\") not allowed here");
    return -1;
  }
  return static_cast<int>(input.at(in));
}

inline Dfa dfa_from_json(const nlohmann::json& j) {
  Dfa dfa;
  dfa.alphabet = Alphabet(j.at("input").get<std::vector<std::string>>());
  dfa.state_names = j.at("states").get<std::vector<std::string>>();
  dfa.initial = state_index(dfa.state_names, j.at("initial").get<std::string>());
  dfa.finals = final_flags(dfa.state_names, j);
  const std::size_t unset = dfa.state_names.size();
  dfa.delta.assign(dfa.state_names.size() * dfa.alphabet.size(), unset);
  for (const auto& t : j.at("transitions")) {
    auto q = state_index(dfa.state_names, t.at("state").get<std::string>());
    auto a = static_cast<Symbol>(input_index(dfa.alphabet, t.at("in").get<std::string>(), false));
    auto& slot = dfa.delta[q * dfa.alphabet.size() + a];
    if (slot != unset) throw Error(ErrorKind::NondeterministicKey, "two transitions from state '" + dfa.state_names[q] + "'");
    slot = state_index(dfa.state_names, t.at("to").get<std::string>());
  }
  dfa.validate();
  return dfa;
}

inline std::vector<Alphabet> stack_alphabets(const nlohmann::json& j) {
  std::vector<Alphabet> stacks;
  if (j.contains("stacks")) {
    for (const auto& g : j.at("stacks")) stacks.emplace_back(g.get<std::vector<std::string>>());
  }
  return stacks;
}

inline int top_index(const Alphabet& gamma, const std::string& top) {
  return top == "-" ? kEmptyTop : static_cast<int>(gamma.at(top));
}

inline MultiStackPda pda_from_json(const nlohmann::json& j) {
  MultiStackPda pda;
  pda.states = j.at("states").get<std::vector<std::string>>();
  pda.input = Alphabet(j.at("input").get<std::vector<std::string>>());
  pda.stacks = stack_alphabets(j);
  pda.initial = state_index(pda.states, j.at("initial").get<std::string>());
  pda.finals = final_flags(pda.states, j);
  pda.epsilon_free = j.value("epsilon_free", true);
  for (const auto& t : j.at("transitions")) {
    PdaKey key;
    key.state = state_index(pda.states, t.at("state").get<std::string>());
    key.input = input_index(pda.input, t.at("in").get<std::string>(), true);
    auto tops = t.value("tops", std::vector<std::string>{});
    auto push = t.value("push", std::vector<std::string>{});
    if (tops.size() != pda.stacks.size() || push.size() != pda.stacks.size()) {
      throw Error(ErrorKind::BadSymbol, "transition must give one top and one push word per stack");
    }
    PdaAction action;
    action.to = state_index(pda.states, t.at("to").get<std::string>());
    for (std::size_t i = 0; i < pda.stacks.size(); ++i) {
      key.tops.push_back(top_index(pda.stacks[i], tops[i]));
      action.push.push_back(pda.stacks[i].parse(push[i]));
    }
    pda.add(std::move(key), std::move(action));
  }
  pda.validate();
  return pda;
}

/// Accepts either a unary stack ("tops"/"push") or the zero-flag form
/// ("zero"/"delta") per transition.
inline OneCounterEps onecounter_from_json(const nlohmann::json& j) {
  OneCounterEps oc;
  oc.states = j.at("states").get<std::vector<std::string>>();
  oc.input = Alphabet(j.at("input").get<std::vector<std::string>>());
  oc.initial = state_index(oc.states, j.at("initial").get<std::string>());
  oc.finals = final_flags(oc.states, j);
  auto stacks = stack_alphabets(j);
  if (stacks.size() > 1 || (stacks.size() == 1 && stacks[0].size() != 1)) {
    throw Error(ErrorKind::BadSymbol, "one-counter automaton needs a single unary stack");
  }
  for (const auto& t : j.at("transitions")) {
    OcKey key;
    key.state = state_index(oc.states, t.at("state").get<std::string>());
    key.input = input_index(oc.input, t.at("in").get<std::string>(), true);
    OcMove move;
    move.to = state_index(oc.states, t.at("to").get<std::string>());
    if (t.contains("zero")) {
      key.zero = t.at("zero").get<bool>();
      move.delta = t.at("delta").get<std::int64_t>();
    } else {
      if (stacks.empty()) throw Error(ErrorKind::BadSymbol, "stack form needs \"stacks\": [[symbol]]");
      auto tops = t.at("tops").get<std::vector<std::string>>();
      auto push = t.at("push").get<std::vector<std::string>>();
      if (tops.size() != 1 || push.size() != 1) throw Error(ErrorKind::BadSymbol, "one top and one push word expected");
      key.zero = top_index(stacks[0], tops[0]) == kEmptyTop;
      auto pushed = static_cast<std::int64_t>(stacks[0].parse(push[0]).size());
      move.delta = key.zero ? pushed : pushed - 1;
    }
    oc.add(key, move);
  }
  if (j.contains("limits")) {
    oc.limits.max_steps = j["limits"].value("steps", oc.limits.max_steps);
    oc.limits.max_counter = j["limits"].value("counter", oc.limits.max_counter);
  }
  oc.validate();
  return oc;
}

}  // namespace detail

inline Automaton automaton_from_json(const nlohmann::json& j) {
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "dfa") return detail::dfa_from_json(j);
    if (type == "pda") return detail::pda_from_json(j);
    if (type == "onecounter") return detail::onecounter_from_json(j);
    throw Error(ErrorKind::BadFile, "unknown automaton type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadFile, std::string("automaton: ") + e.what());
  }
}

inline Automaton load_automaton(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::BadFile, "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadFile, path + ": " + e.what());
  }
  return automaton_from_json(j);
}

template <typename T>
T load_automaton_as(const std::string& path) {
  auto a = load_automaton(path);
  if (auto* p = std::get_if<T>(&a)) return std::move(*p);
  if constexpr (std::is_same_v<T, MultiStackPda>) {
    if (auto* d = std::get_if<Dfa>(&a)) return pda_from_dfa(*d);
  }
  throw Error(ErrorKind::BadFile, path + ": automaton has the wrong type");
}

}  // namespace entropylab
