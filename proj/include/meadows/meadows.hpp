#pragma once

#include "meadows/core.hpp"
#include "meadows/diagram.hpp"
#include "meadows/fixtures.hpp"
#include "meadows/flasque.hpp"
#include "meadows/io.hpp"
#include "meadows/lattice.hpp"
#include "meadows/meadow.hpp"
#include "meadows/mr.hpp"
#include "meadows/ring.hpp"
