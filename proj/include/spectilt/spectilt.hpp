#pragma once

#include "spectilt/cmserre.hpp"
#include "spectilt/session.hpp"
