#pragma once

#include "zset/certificate.hpp"
#include "zset/corpus.hpp"
#include "zset/depth.hpp"
#include "zset/enumerate.hpp"
#include "zset/error.hpp"
#include "zset/forcing.hpp"
#include "zset/formula.hpp"
#include "zset/gset.hpp"
#include "zset/io.hpp"
#include "zset/oracle.hpp"
#include "zset/suites.hpp"
#include "zset/topos.hpp"
#include "zset/wisc.hpp"
