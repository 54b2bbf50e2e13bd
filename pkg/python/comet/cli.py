"""
    .. _comet-cli:

    **cli**
    -------

    The cometsim command line

    Subcommands::

        simulate      run a trace on the configured architecture
        power         laser, SOA and tuning power of the architecture
        sweep-b       the same trace on the b = 1, 2, 4 family
        map           map one address onto the subarray organization
        lut           signal integrity plan and gain LUT
        corrupt-demo  crossbar versus isolated cell corruption
        gen-trace     write a synthetic trace

    Exit status is 0 on success, 1 for model and configuration errors,
    2 for usage errors and 3 for missing files.
"""

import argparse
import sys
from collections import OrderedDict

import pcmmisc.miscutils as miscutils
from pcmconfig import cfgdefs
from pcmconfig.runconfig import RunConfig
from comet import cometdefs
from comet import engine
from comet import geometry as geo
from comet import integrity
from comet import report
from comet import trace_synth
from comet.exceptions import CometException
from cosmos import corruption
from cosmos.crossbar import cosmos_power_stack, simulate_cosmos

PROG = 'cometsim'


class UsageError(Exception):
    """ Inconsistent command line arguments """
    pass


#######################################################################
def _int_auto(text):
    """ int accepting 0x prefixes """
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError('invalid integer %r' % text)


def build_parser():
    """ Argument parser of all subcommands """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', action='store', help='JSON or WCL configuration file')
    common.add_argument('--trace', action='store', help='trace file (default: synthesize one)')
    common.add_argument('--out', action='store', help='output file (default: standard output)')
    common.add_argument('--seed', action='store', type=_int_auto)
    common.add_argument('--arch', action='store', choices=cometdefs.VALID_ARCHS)
    common.add_argument('--policy', action='store', choices=cometdefs.VALID_POLICIES)
    common.add_argument('--format', action='store', choices=cfgdefs.VALID_FORMATS)
    common.add_argument('--timestamp', action='store', nargs='?', const=True, default=None,
                        help='stamp the report, with the given ISO time if one is passed')

    parser = argparse.ArgumentParser(prog=PROG, description='COMET photonic PCM memory model')
    subs = parser.add_subparsers(dest='command', metavar='command')
    subs.required = True

    subs.add_parser('simulate', parents=[common], help='simulate a trace')
    subs.add_parser('power', parents=[common], help='power breakdown')
    subs.add_parser('sweep-b', parents=[common], help='bit density sweep')

    mapper = subs.add_parser('map', parents=[common], help='map an address')
    mapper.add_argument('--addr', action='store', type=_int_auto, help='flat byte address')
    mapper.add_argument('--row', action='store', type=_int_auto)
    mapper.add_argument('--col', action='store', type=_int_auto)
    mapper.add_argument('--bank', action='store', type=_int_auto, default=0)
    mapper.add_argument('--channel', action='store', type=_int_auto, default=0)
    mapper.add_argument('--text', action='store_true', help='human readable output')

    lut = subs.add_parser('lut', parents=[common], help='signal integrity plan')
    lut.add_argument('--bits', action='store', type=int, choices=cometdefs.VALID_BITS_PER_CELL)

    demo = subs.add_parser('corrupt-demo', parents=[common], help='crossbar corruption demo')
    demo.add_argument('--matrix', action='store', help='byte matrix file (default: gradient)')
    demo.add_argument('--steps', action='store', type=int)

    subs.add_parser('gen-trace', parents=[common], help='write a synthetic trace')
    return parser


#######################################################################
def _capacity_bytes(config):
    if config.value('sim.arch') == cometdefs.ARCH_COSMOS:
        return config.crossbar().geometry().capacity_bytes
    return config.geometry().capacity_bytes


def _load_trace(config):
    """ The trace file, or the configured synthetic trace """
    filename = config.value('trace.file')
    if filename:
        return engine.read_trace(filename)
    return trace_synth.generate(config.trace_spec(), _capacity_bytes(config))


def _timeline(config):
    return config.value('sim.timeline_ns') or None


#######################################################################
def cmd_simulate(config, args):
    trace = _load_trace(config)
    if config.value('sim.arch') == cometdefs.ARCH_COSMOS:
        stats = simulate_cosmos(trace, config.crossbar(), config.optics(), config.line_bytes(),
                                _timeline(config))
    else:
        g = config.geometry()
        stats = engine.simulate_comet(trace, g, config.timing(), config.level_table(), config.optics(),
                                      config.lut(), config.line_bytes(), _timeline(config),
                                      **config.decoder())
    return report.stats_document(stats), report.stats_rows([stats])


def cmd_power(config, args):
    doc = OrderedDict([('arch', config.value('sim.arch'))])
    if config.value('sim.arch') == cometdefs.ARCH_COSMOS:
        xbar = config.crossbar()
        doc['geometry'] = xbar.geometry().describe()
        doc['power'] = cosmos_power_stack(xbar, config.losses(), config.power(), config.line_bytes())
    else:
        g = config.geometry()
        doc['geometry'] = g.describe()
        doc['power'] = config.optics().stack(g, config.reset_mode())
    return doc, report.power_rows(doc['power'])


def cmd_sweep(config, args):
    family = config.family()
    capacity = min(g.capacity_bytes for g in family.values())
    filename = config.value('trace.file')
    if filename:
        trace = engine.read_trace(filename)
    else:
        trace = trace_synth.generate(config.trace_spec(), capacity)
    sweep = engine.sweep_bit_density(trace, family, config.timing(), config.optics(),
                                     config.reset_mode(), config.line_bytes(),
                                     config.value('sim.nproc') or None, **config.decoder())
    return report.sweep_document(sweep), report.sweep_rows(sweep)


def cmd_map(config, args):
    if config.value('sim.arch') == cometdefs.ARCH_COSMOS:
        g = config.crossbar().geometry()
    else:
        g = config.geometry()

    if args['addr'] is not None:
        phys = geo.decompose_flat_address(args['addr'], g, config.line_bytes())
    elif args['row'] is not None and args['col'] is not None:
        phys = geo.PhysicalAddress(channel=args['channel'], row_id=args['row'], bank=args['bank'],
                                   column_id=args['col'])
    else:
        raise UsageError('map needs --addr or both --row and --col')
    mapped = geo.map_address(phys, g)

    doc = OrderedDict([('physical', phys), ('mapped', mapped)])
    if args['addr'] is not None:
        doc['address'] = args['addr']
    row = OrderedDict()
    for name in ('channel', 'row_id', 'bank', 'column_id', 'offset'):
        row[name] = getattr(phys, name)
    for name in ('subarray_id', 'subarray_row', 'subarray_col'):
        row[name] = getattr(mapped, name)
    return doc, ([row], list(row.keys()))


def cmd_lut(config, args):
    bits = args['bits'] or config.value('geometry.bits_per_cell')
    plan, lut = integrity.integrity_plan(bits, config.value('geometry.subarray_rows'),
                                         config.value('losses.intra_soa_gain_db'),
                                         config.value('losses.eo_mr_through_db'),
                                         lut=config.lut(bits), restore_gain_db=config.optics().soa_gain_db)
    doc = OrderedDict([('plan', plan), ('lut', lut)])
    return doc, report.lut_rows(lut)


def cmd_corrupt(config, args):
    xbar = config.crossbar()
    if args['matrix']:
        matrix = corruption.read_byte_matrix(args['matrix'])
    else:
        matrix = corruption.gradient()
    steps = config.value('cosmos.demo_steps') if args['steps'] is None else args['steps']
    demo = corruption.run_corruption_demo(matrix, xbar, steps)
    return demo, report.corruption_rows(demo)


COMMANDS = {'simulate': cmd_simulate,
            'power': cmd_power,
            'sweep-b': cmd_sweep,
            'map': cmd_map,
            'lut': cmd_lut,
            'corrupt-demo': cmd_corrupt}


#######################################################################
def _fail(msg, status):
    print("%s: error: %s" % (PROG, msg), file=sys.stderr)
    return status


def run(argv=None):
    """ Run one cometsim command

        Parameters
        ----------
        argv : list, optional
            Arguments after the program name. Default is sys.argv[1:].

        Returns
        -------
        int
            The exit status.
    """
    parser = build_parser()
    try:
        args = vars(parser.parse_args(argv))
    except SystemExit as err:
        return err.code

    miscutils.fwdebug(3, "CLI_DEBUG", "args = %s" % args)

    try:
        config = RunConfig(args)
        fmt = config.value('output.format')
        out = config.value('output.out')
        if args['command'] == 'gen-trace':
            trace = trace_synth.generate(config.trace_spec(), _capacity_bytes(config))
            with report.open_output(out) as outfh:
                engine.write_trace(trace, outfh, config.line_bytes())
            return cometdefs.EXIT_SUCCESS

        doc, table = COMMANDS[args['command']](config, args)
        if args['command'] == 'map' and args['text']:
            with report.open_output(out) as outfh:
                miscutils.pretty_print_dict(report.stamp(table[0][0], args['timestamp']), outfh)
        else:
            report.emit(doc, table, fmt, out, args['timestamp'])
    except UsageError as err:
        return _fail(str(err), cometdefs.EXIT_USAGE)
    except FileNotFoundError as err:
        return _fail("%s: %s" % (err.strerror, err.filename), cometdefs.EXIT_NOFILE)
    except CometException as err:
        return _fail(str(err), cometdefs.EXIT_FAILURE)
    except OSError as err:
        return _fail(str(err), cometdefs.EXIT_FAILURE)

    return cometdefs.EXIT_SUCCESS


def main():
    """ Entry point of bin/cometsim """
    sys.exit(run(sys.argv[1:]))
