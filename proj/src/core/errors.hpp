// SPDX-License-Identifier: Apache-2.0
//
// uavsec - secrecy-rate optimization for a sensing UAV transmitter
// Copyright (C) 2026 The uavsec authors
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

#ifndef UAVSEC_ERRORS_HPP
#define UAVSEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace uavsec
{

// Config file could not be parsed; carries the offending key.
class SchemaError : public std::runtime_error
{
public:
    SchemaError(std::string key, const std::string &what)
        : std::runtime_error("config key '" + key + "': " + what), key_(std::move(key)) {}
    const std::string &key() const noexcept { return key_; }

private:
    std::string key_;
};

// Config parsed but violates a scenario invariant.
class ValidationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// An optimization block could not satisfy its constraints.
// slot is 1-based, 0 when the failure is not tied to one slot.
class InfeasibleError : public std::runtime_error
{
public:
    InfeasibleError(std::string block, int slot, const std::string &what)
        : std::runtime_error(block + (slot > 0 ? " (slot " + std::to_string(slot) + ")" : std::string()) + ": " + what),
          block_(std::move(block)), slot_(slot) {}
    const std::string &block() const noexcept { return block_; }
    int slot() const noexcept { return slot_; }

private:
    std::string block_;
    int slot_;
};

} // namespace uavsec

#endif
