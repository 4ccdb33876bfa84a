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
from __future__ import print_function


major = 1
minor = 0
patch = 0
dev = True
dev_str = '.dev0' if dev else ''
version = '{}.{}.{}{}'.format(major, minor, patch, dev_str)

# Layout revision of the result files (CSV columns, JSON keys). Written into
# every run manifest next to the tool version.
format_version = '2'

if __name__ == '__main__':
    print(version)
