"""
    .. _comet-report:

    **report**
    ----------

    Structured reports of the model runs

    JSON documents have sorted keys and floats rounded to 12 significant
    digits, so repeated runs are byte-identical. Tables are written as CSV
    through astropy.
"""

import json
import os
import sys
from collections import OrderedDict
from contextlib import contextmanager
from dataclasses import asdict, is_dataclass

import numpy as np
from astropy.table import Table

import pcmmisc.miscutils as miscutils
import pcmmisc.misctime as misctime
from comet import cometdefs
from comet.engine import SimStats

FLOAT_FORMAT = '%.12g'


#######################################################################
def _plain(obj):
    """ Convert a report value into JSON types with fixed float precision """
    if isinstance(obj, dict):
        return {str(key): _plain(val) for key, val in obj.items()}
    if hasattr(obj, 'describe'):
        return _plain(obj.describe())
    if is_dataclass(obj) and not isinstance(obj, type):
        if hasattr(obj, 'as_dict'):
            return _plain(obj.as_dict())
        return _plain(asdict(obj))
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_plain(val) for val in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(FLOAT_FORMAT % obj)
    return obj


def stamp(doc, timestamp=None):
    """ Add the report schema version and, on request, a timestamp

        Parameters
        ----------
        doc : dict
            The report.

        timestamp : bool or str, optional
            True stamps the current time, a string stamps that time,
            None or False leaves the report unstamped.

        Returns
        -------
        OrderedDict
    """
    out = OrderedDict(doc)
    out['report_schema_version'] = cometdefs.REPORT_SCHEMA_VERSION
    if timestamp:
        out['timestamp'] = misctime.report_timestamp(None if timestamp is True else timestamp)
    return out


#######################################################################
def dumps_json(doc):
    """ The report as JSON text """
    return json.dumps(_plain(doc), sort_keys=True, indent=2) + '\n'


def write_json(doc, out_file):
    out_file.write(dumps_json(doc))


def rows_table(rows, names):
    """ astropy Table with one column per name

        Parameters
        ----------
        rows : list
            dicts holding every name.

        names : list
            Column names, in order.
    """
    cols = [[_plain(row[name]) for row in rows] for name in names]
    table = Table(cols, names=names)
    for name in names:
        if table[name].dtype.kind == 'f':
            table[name].format = FLOAT_FORMAT
    return table


def write_csv(rows, names, out_file):
    rows_table(rows, names).write(out_file, format='ascii.csv')


@contextmanager
def open_output(filename=None):
    """ File handle for filename, standard output when it is empty """
    if not filename:
        yield sys.stdout
        return
    miscutils.coremakedirs(os.path.dirname(filename))
    with open(filename, 'w') as outfh:
        yield outfh
    miscutils.fwdebug(3, 'CLI_DEBUG', "wrote %s" % filename)


#######################################################################
def stats_document(stats, config=None):
    """ Report of one simulation """
    doc = OrderedDict([('arch', stats.arch), ('stats', stats.as_dict())])
    if stats.power_timeline is not None:
        doc['power_timeline_w'] = stats.power_timeline
    if config is not None:
        doc['config'] = config
    return doc


def stats_rows(stats_list):
    """ CSV rows and column names of simulation statistics """
    rows = [stats.as_dict() for stats in stats_list]
    names = list(SimStats().as_dict().keys())
    return rows, names


def power_rows(stack):
    """ One (component, watts) row per entry of a power stack """
    rows = [OrderedDict([('component', name), ('watts', val)]) for name, val in stack.items()
            if name.endswith('_w')]
    return rows, ['component', 'watts']


def lut_rows(lut):
    rows = [OrderedDict([('index', idx), ('gain_db', gain)]) for idx, gain in enumerate(lut.entries)]
    return rows, ['index', 'gain_db']


def sweep_document(sweep):
    """ Report of a bit density sweep """
    doc = OrderedDict()
    for bits, entry in sweep.items():
        doc['b%d' % bits] = OrderedDict([('geometry', entry['geometry'].describe()),
                                        ('stats', entry['stats'].as_dict()),
                                        ('power', entry['power'])])
    return OrderedDict([('sweep', doc)])


def sweep_rows(sweep):
    """ One row per bit density with the headline figures """
    rows = []
    for bits, entry in sweep.items():
        stats = entry['stats'].as_dict()
        g = entry['geometry']
        rows.append(OrderedDict([('bits_per_cell', bits),
                                 ('subarray_cols', g.subarray_cols),
                                 ('capacity_bits', g.capacity_bits),
                                 ('latency_avg_ns', stats['latency_avg_ns']),
                                 ('bandwidth_bytes_per_s', stats['bandwidth_bytes_per_s']),
                                 ('epb_pj_per_bit', stats['epb_pj_per_bit']),
                                 ('total_w', entry['power']['total_w'])]))
    names = ['bits_per_cell', 'subarray_cols', 'capacity_bits', 'latency_avg_ns',
             'bandwidth_bytes_per_s', 'epb_pj_per_bit', 'total_w']
    return rows, names


def corruption_rows(report):
    rows = report['steps']
    return rows, ['step', 'crossbar_corrupted', 'crossbar_corrupted_pct',
                  'isolated_corrupted', 'isolated_corrupted_pct']


#######################################################################
def emit(doc, table, fmt, out=None, timestamp=None):
    """ Write a report in the requested format

        Parameters
        ----------
        doc : dict
            The structured report, written for 'json'.

        table : tuple
            (rows, names) written for 'csv'.

        fmt : str
            'json' or 'csv'.

        out : str, optional
            Output file. Default is standard output.

        timestamp : bool or str, optional
            See stamp.
    """
    with open_output(out) as outfh:
        if fmt == 'csv':
            rows, names = table
            write_csv(rows, names, outfh)
        else:
            write_json(stamp(doc, timestamp), outfh)
