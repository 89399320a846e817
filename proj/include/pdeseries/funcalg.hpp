#pragma once

#include "pdeseries/display.hpp"
#include "pdeseries/exppoly.hpp"
#include "pdeseries/parse.hpp"
#include "pdeseries/spectral.hpp"
#include "pdeseries/vector_field.hpp"
