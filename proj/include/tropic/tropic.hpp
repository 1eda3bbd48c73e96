// tropic.hpp — umbrella header.

#pragma once

#include "tropic/envelope.hpp"
#include "tropic/errors.hpp"
#include "tropic/io.hpp"
#include "tropic/limits.hpp"
#include "tropic/numbers.hpp"
#include "tropic/observables.hpp"
#include "tropic/oracle.hpp"
#include "tropic/spectrum.hpp"
#include "tropic/tropical.hpp"
