#pragma once

#include "modrep/fields.hpp"
#include "modrep/linalg.hpp"
#include "modrep/sl2.hpp"
#include "modrep/finrep.hpp"
#include "modrep/cind.hpp"
#include "modrep/smooth.hpp"
#include "modrep/harness.hpp"
