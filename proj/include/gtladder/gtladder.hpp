#pragma once

#include "gtladder/common.hpp"
#include "gtladder/partition.hpp"
#include "gtladder/grid.hpp"
#include "gtladder/ladder.hpp"
#include "gtladder/skeleton.hpp"
#include "gtladder/autgroup.hpp"
#include "gtladder/chains.hpp"
#include "gtladder/render.hpp"
