#!/usr/bin/env python
#
# Copyright (C) 2026 The skewtest Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
"""Shortcut for skewtest/cli.py.

This would normally be installed by pip as `skewtest`, but running from the
source directory is handy while working on the package.
"""
import sys

import skewtest.cli


if __name__ == '__main__':
    sys.exit(skewtest.cli.main())
