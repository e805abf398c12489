#pragma once

#include "twobridge/arith.hpp"
#include "twobridge/diagram.hpp"
#include "twobridge/slopes.hpp"
#include "twobridge/tables.hpp"
