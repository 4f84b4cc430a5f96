#pragma once

#define FIBNAR_VERSION "1.0.0"
