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
"""Data ingestion, outlier screening and plot emission."""
from __future__ import absolute_import
from __future__ import division

import collections
import csv
import logging

import matplotlib
import matplotlib.cbook
import matplotlib.figure
import numpy as np
import scipy.stats

from skewtest.errors import DataError
from skewtest.errors import DegenerateSpreadError
from skewtest.errors import InsufficientDataError
from skewtest.errors import InvalidArgumentError
from skewtest.errors import ParseError
from skewtest.errors import SchemaError
from skewtest.evidence import Dataset


def logger():
    return logging.getLogger(__name__)


MAD_SCALE = 1.4826
DEFAULT_MAD_THRESHOLD = 3.0

PLOT_KINDS = ('curve', 'boxplot')


def _is_number(text):
    try:
        float(text)
    except ValueError:
        return False
    return True


def _column_index(header, column, path):
    if column is None:
        return 0
    if header is not None and column in header:
        return header.index(column)
    try:
        index = int(column)
    except (TypeError, ValueError):
        raise SchemaError('{}: no column named {!r}'.format(path, column))
    if index < 0:
        raise SchemaError('{}: negative column index {}'.format(path, index))
    return index


def load_column(path, column=None, delimiter=','):
    """Reads one numeric column of a delimited text file.

    A first row whose selected cell is not numeric is taken as the header.
    Blank lines are skipped.

    Args:
        path: File to read.
        column: Column name (needs a header) or zero-based index. Defaults
            to the first column.
        delimiter: Field delimiter.

    Returns:
        A Dataset labelled with the column name or index.

    Raises:
        SchemaError: the column does not exist.
        ParseError: a cell is not a finite number; carries the 1-based row.
        InsufficientDataError: fewer than 3 values.
        DataError: the file cannot be read.
    """
    try:
        with open(path, newline='', encoding='utf-8') as data_file:
            rows = [(number, row) for number, row in
                    enumerate(csv.reader(data_file, delimiter=delimiter), 1)
                    if row and any(cell.strip() for cell in row)]
    except (IOError, UnicodeDecodeError) as ex:
        raise DataError('{}: {}'.format(path, ex))
    if not rows:
        raise InsufficientDataError('{}: file is empty'.format(path))

    header = None
    first = [cell.strip() for cell in rows[0][1]]
    if not all(_is_number(cell) for cell in first if cell):
        header = first
        rows = rows[1:]
    index = _column_index(header, column, path)
    if header is not None and index >= len(header):
        raise SchemaError('{}: column {} out of range'.format(path, index))

    values = []
    for number, row in rows:
        if index >= len(row):
            raise SchemaError('{}: row {} has no column {}'.format(
                path, number, index))
        cell = row[index].strip()
        try:
            value = float(cell)
        except ValueError:
            raise ParseError('{}: not a number: {!r}'.format(path, cell),
                             row=number)
        if not np.isfinite(value):
            raise ParseError('{}: not finite: {!r}'.format(path, cell),
                             row=number)
        values.append(value)

    label = header[index] if header is not None else str(index)
    logger().info('%s: read %d values from column %s', path, len(values),
                  label)
    return Dataset(values, label)


def write_column(dataset, path, name=None):
    """Writes a Dataset as a single-column CSV with a header."""
    with open(path, 'w', newline='', encoding='utf-8') as data_file:
        writer = csv.writer(data_file, lineterminator='\n')
        writer.writerow([name or dataset.label or 'value'])
        for value in dataset.values:
            writer.writerow([repr(float(value))])


class OutlierReport(object):
    """Observations flagged by the scaled median absolute deviation."""
    def __init__(self, indices, threshold, median, mad_scaled,
                 flagged_values):
        self.indices = indices
        self.threshold = threshold
        self.median = median
        self.mad_scaled = mad_scaled
        self.flagged_values = flagged_values

    @property
    def count(self):
        return len(self.indices)

    def remove(self, dataset):
        """Returns the dataset without the flagged observations."""
        keep = np.ones(dataset.n, dtype=bool)
        keep[self.indices] = False
        return Dataset(dataset.values[keep], dataset.label)

    def to_dict(self):
        return collections.OrderedDict([
            ('indices', [int(i) for i in self.indices]),
            ('threshold', self.threshold),
            ('median', self.median),
            ('mad_scaled', self.mad_scaled),
            ('flagged_values', [float(v) for v in self.flagged_values]),
        ])


def mad_outliers(data, threshold=DEFAULT_MAD_THRESHOLD):
    """Flags x_i with |x_i - median| / (1.4826 MAD) > threshold.

    >>> mad_outliers(Dataset([1.0, 2.0, 3.0, 4.0, 5.0])).count
    0

    Raises:
        DegenerateSpreadError: the MAD is zero.
    """
    if not threshold > 0:
        raise InvalidArgumentError('threshold must be positive')
    values = data.values if isinstance(data, Dataset) else Dataset(data).values
    median = float(np.median(values))
    mad_scaled = float(
        scipy.stats.median_abs_deviation(values, scale=1.0 / MAD_SCALE))
    if not mad_scaled > 0:
        raise DegenerateSpreadError('median absolute deviation is zero')
    scores = np.abs(values - median) / mad_scaled
    indices = np.flatnonzero(scores > threshold)
    if len(indices):
        logger().info('flagged %d outliers: %s', len(indices),
                      values[indices].tolist())
    return OutlierReport(indices, float(threshold), median, mad_scaled,
                         values[indices])


_SVG_RC = {
    'svg.hashsalt': 'skewtest',
    'svg.fonttype': 'none',
}


def _curve_figure(table):
    x = np.asarray(table.get('x', []), dtype=float)
    series = table.get('series') or {}
    if x.size == 0 or not series:
        raise SchemaError('curve table needs x values and at least one series')
    figure = matplotlib.figure.Figure(figsize=(6.4, 4.0))
    axes = figure.add_subplot(1, 1, 1)
    for i, (label, values) in enumerate(series.items()):
        values = np.asarray(values, dtype=float)
        if values.shape != x.shape:
            raise SchemaError('series {!r} has {} points for {} x values'.
                              format(label, values.size, x.size))
        line, = axes.plot(x, values, label=label)
        line.set_gid('series-{}'.format(i))
    axes.set_xlabel(table.get('xlabel', 'lambda'))
    axes.set_ylabel(table.get('ylabel', ''))
    if len(series) > 1:
        axes.legend()
    return figure, axes


def _boxplot_figure(table):
    groups = table.get('groups') or {}
    if not groups:
        raise SchemaError('boxplot table needs at least one group')
    stats = []
    for label, values in groups.items():
        values = np.asarray(values, dtype=float)
        values = values[np.isfinite(values)]
        if values.size == 0:
            raise SchemaError('boxplot group {!r} is empty'.format(label))
        stats.extend(matplotlib.cbook.boxplot_stats(
            values, whis=1.5, labels=[label]))
    figure = matplotlib.figure.Figure(figsize=(6.4, 4.0))
    axes = figure.add_subplot(1, 1, 1)
    artists = axes.bxp(stats)
    for i, box in enumerate(artists['boxes']):
        box.set_gid('box-{}'.format(i))
    axes.set_ylabel(table.get('ylabel', ''))
    return figure, axes


def emit_plot(kind, table, out):
    """Writes a self-contained SVG plot.

    Args:
        kind: 'curve' draws one line per entry of table['series'] against
            table['x']; 'boxplot' draws one Tukey box per entry of
            table['groups'].
        table: Dict with the kind's data plus optional 'title', 'xlabel'
            and 'ylabel'.
        out: Output path.

    Every line carries the SVG id series-<i> and every box the id box-<i>.

    Raises:
        SchemaError: the table does not match the kind.
    """
    if kind not in PLOT_KINDS:
        raise InvalidArgumentError('unknown plot kind {!r}'.format(kind))
    if not isinstance(table, dict):
        raise SchemaError('plot table must be a mapping')
    with matplotlib.rc_context(_SVG_RC):
        if kind == 'curve':
            figure, axes = _curve_figure(table)
        else:
            figure, axes = _boxplot_figure(table)
        if table.get('title'):
            axes.set_title(table['title'])
        figure.savefig(out, format='svg', metadata={'Date': None})
    logger().debug('wrote %s plot %s', kind, out)
    return out
