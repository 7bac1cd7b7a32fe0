"""The specrec command.

    specrec spectrum FILE [--dim I] [--pair FILE2]
    specrec spoly FILE [--pair FILE2]
    specrec check FILE [--vertex V | --all] [--filter] [--specializations]
    specrec matroid spoly|krs|pair FILE [--element E]
    specrec shifted sdt|degree|gm|fast-spectrum|recursion [FILE] ...
    specrec catalog [NAME]
    specrec battery [--instances N]

FILE is a JSON document or the name of a catalog instance.  Exit status is
0 on success, 1 when a check fails and 2 on bad input.
"""

import sys

import simplejson as json

from specrec.catalog import catalog, catalog_names, load, to_document
from specrec.complex import Family, OrderFilter, SimplicialComplex, as_pair, \
        dual, filter_pair, pair
from specrec.config import get_config, get_config_path, get_opt_parser
from specrec.error import ConfigError, InputError, PreconditionError
from specrec.laplacian import spectrum, spectrum_poly
from specrec import matroid as matroids
from specrec.recursion import RecursionSummary, check_all_vertices, \
        check_recursion, check_recursion_filter, check_specializations, \
        identity_battery
from specrec.shifted import FamilyPair, check_sdT, degree_sequence, \
        family_pair_recursion_check, gm_campaign, grone_merris_scan, \
        shifted_pair_spectrum
from specrec.util import get_logger, init_logging

log = get_logger("specrec.cli")

def _setup(argv, usage, options=()):
    oparse = get_opt_parser(default_config_file=get_config_path(),
            usage=usage)
    for (args, kwargs) in options:
        oparse.add_option(*args, **kwargs)
    (opts, args) = oparse.parse_args(args=argv)
    config = get_config(opts.config_file, opts)
    init_logging(config.log_level, format=config.log_format,
            debug=opts.debug, syslog_facility=config.syslog_facility)
    return (opts, args, config)

def _emit(out, opts, text, data):
    if opts.json:
        out.write(json.dumps(data, sort_keys=True) + "\n")
    elif text:
        out.write(text + "\n")

def _one_arg(args, what):
    if len(args) != 1:
        raise InputError("expected exactly one %s" % what)
    return args[0]

def _as_complex(X):
    if isinstance(X, matroids.Matroid):
        return X.independence_complex()
    return X

def _face_set(X, config, pair_source=None):
    """The relative face set a spectrum command works on."""
    X = _as_complex(X)
    if isinstance(X, FamilyPair):
        raise InputError("family pairs are handled by 'shifted'")
    if pair_source is None:
        return as_pair(X)
    Y = _as_complex(load(pair_source, config.max_vertices))
    if isinstance(X, SimplicialComplex) and isinstance(Y, SimplicialComplex):
        return pair(X, Y)
    if isinstance(X, OrderFilter) and isinstance(Y, OrderFilter):
        return filter_pair(X, Y)
    raise InputError("a pair needs two complexes or two order filters")

PAIR_OPTION = (("--pair",), dict(dest="pair", default=None,
    help="subcomplex (or subfilter) forming a pair with FILE"))

def cmd_spectrum(argv, out):
    (opts, args, config) = _setup(argv,
            "%prog spectrum FILE [--dim I] [--pair FILE2]",
            [(("--dim",), dict(dest="dim", type="int", default=None)),
                PAIR_OPTION])
    X = load(_one_arg(args, "input"), config.max_vertices)
    P = _face_set(X, config, opts.pair)
    top = P.dim()
    if opts.dim is not None:
        dims = [opts.dim]
    elif top is None:
        dims = []
    else:
        dims = range(-1, top + 1)

    lines = []
    data = {}
    for i in dims:
        spec = spectrum(P, i)
        lines.append("dim %d: %s" % (i, spec.render()))
        data[str(i)] = spec.to_dict()
    _emit(out, opts, "\n".join(lines), {'dims': data})
    return 0

def cmd_spoly(argv, out):
    (opts, args, config) = _setup(argv, "%prog spoly FILE [--pair FILE2]",
            [PAIR_OPTION])
    X = load(_one_arg(args, "input"), config.max_vertices)
    S = spectrum_poly(_face_set(X, config, opts.pair))
    _emit(out, opts, "\n".join([S.render()] + S.residual_lines()),
            S.to_dict())
    return 0

def _find_vertex(X, name):
    for v in X.ambient:
        if str(v) == name:
            return v
    raise InputError("unknown vertex: %s" % name)

def cmd_check(argv, out):
    (opts, args, config) = _setup(argv,
            "%prog check FILE [--vertex V | --all] [--filter]",
            [(("--vertex",), dict(dest="vertex", default=None)),
                (("--all",), dict(dest="all", action="store_true",
                    default=False)),
                (("--filter",), dict(dest="filter", action="store_true",
                    default=False,
                    help="check the order-filter recursion of the dual")),
                (("--specializations",), dict(dest="specializations",
                    action="store_true", default=False))])
    X = _as_complex(load(_one_arg(args, "input"), config.max_vertices))
    if opts.vertex is not None and opts.all:
        raise InputError("--vertex and --all are exclusive")
    if opts.filter and isinstance(X, SimplicialComplex):
        X = dual(X)
    if not isinstance(X, (SimplicialComplex, OrderFilter)):
        raise InputError("check needs a complex, a filter or a matroid")

    if opts.vertex is None:
        summary = check_all_vertices(X, jobs=config.jobs)
    else:
        e = _find_vertex(X, opts.vertex)
        if isinstance(X, OrderFilter):
            summary = RecursionSummary([check_recursion_filter(X, e)])
        else:
            summary = RecursionSummary([check_recursion(X, e)])

    text = summary.render()
    data = summary.to_dict()
    holds = summary.holds
    if opts.specializations:
        if not isinstance(X, SimplicialComplex):
            raise InputError("specializations apply to complexes")
        reports = [check_specializations(X, r.vertex)
                for r in summary.reports]
        text += "\n" + "\n".join(r.render() for r in reports)
        data['specializations'] = dict((str(r.vertex), r.holds)
                for r in reports)
        holds = holds and all(r.holds for r in reports)
    _emit(out, opts, text, data)
    return 0 if holds else 1

def cmd_matroid(argv, out):
    if not argv or argv[0] not in ('spoly', 'krs', 'pair'):
        raise InputError("matroid subcommand must be spoly, krs or pair")
    sub = argv[0]
    (opts, args, config) = _setup(argv[1:],
            "%prog matroid spoly|krs|pair FILE [--element E]",
            [(("--element",), dict(dest="element", default=None))])
    M = load(_one_arg(args, "matroid"), config.max_vertices)
    if not isinstance(M, matroids.Matroid):
        raise InputError("input is not a matroid")

    if sub == 'spoly':
        S = matroids.spectrum_poly_krs(M)
        _emit(out, opts, S.render(), S.to_dict())
    elif sub == 'krs':
        rows = []
        for B in sorted(M.bases):
            rows.append(M.krs_decompose(B))
        _emit(out, opts, "\n".join(d.render() for d in rows),
                [{'B1': [str(v) for v in d.ordered(d.B1_mask)],
                    'B2': [str(v) for v in d.ordered(d.B2_mask)],
                    'removed': [str(v) for v in d.removal_trace]}
                    for d in rows])
    else:
        if opts.element is None:
            raise InputError("matroid pair needs --element")
        e = None
        for v in M.ground:
            if str(v) == opts.element:
                e = v
        if e is None:
            raise InputError("unknown element: %s" % opts.element)
        if M.is_loop(e):
            log.debug("%s is a loop, taking S of IN(M)-e directly" % (e,))
            S = spectrum_poly(as_pair(M.independence_complex().delete(e)))
        else:
            S = matroids.pair_spectrum_poly(M, e)
        _emit(out, opts, S.render(), S.to_dict())
    return 0

def _family_pair(X, dim=None):
    """A family pair input, or the top faces of a complex over nothing."""
    if isinstance(X, FamilyPair):
        return X
    X = _as_complex(X)
    if not isinstance(X, SimplicialComplex) or X.is_void:
        raise InputError("need a family pair or a non-void complex")
    i = X.dim() if dim is None else dim
    return FamilyPair(Family.of_complex(X, i), Family(X.ambient, i, ()))

def cmd_shifted(argv, out):
    subs = ('sdt', 'degree', 'gm', 'fast-spectrum', 'recursion')
    if not argv or argv[0] not in subs:
        raise InputError("shifted subcommand must be one of %s" %
                ", ".join(subs))
    sub = argv[0]
    (opts, args, config) = _setup(argv[1:],
            "%prog shifted " + "|".join(subs) + " [FILE] [options]",
            [(("--dim",), dict(dest="dim", type="int", default=None)),
                PAIR_OPTION,
                (("--exhaustive",), dict(dest="exhaustive", type="int",
                    default=6)),
                (("--random",), dict(dest="random", type="int",
                    default=None))])

    if sub == 'gm' and not args:
        random_pairs = opts.random
        if random_pairs is None:
            random_pairs = config.gm_random_pairs
        summary = gm_campaign(opts.exhaustive, random_pairs, config.seed,
                config.gm_refine_bits)
        _emit(out, opts, summary.render(), {'counts': summary.counts,
            'findings': len(summary.findings)})
        return 0 if summary.clean else 1

    X = load(_one_arg(args, "input"), config.max_vertices)
    if sub == 'fast-spectrum':
        delta = _as_complex(X)
        if not isinstance(delta, SimplicialComplex):
            raise InputError("fast-spectrum needs a complex")
        if opts.pair is None:
            sub_complex = SimplicialComplex.void(delta.ambient)
        else:
            sub_complex = _as_complex(load(opts.pair, config.max_vertices))
        S = shifted_pair_spectrum(delta, sub_complex)
        _emit(out, opts, S.render(), S.to_dict())
        return 0

    P = _family_pair(X, opts.dim)
    if sub == 'sdt':
        report = check_sdT(P)
        _emit(out, opts, report.render(), report.to_dict())
        return 0 if report.ok else 1
    if sub == 'degree':
        d = degree_sequence(P)
        text = "%s\ndT=%s vertex-ordered=%s" % (d.render(),
                d.partition.conjugate().render(),
                "yes" if d.is_vertex_ordered() else "no")
        _emit(out, opts, text, {'degrees': list(d.values),
            'dT': list(d.partition.conjugate()),
            'vertex_ordered': d.is_vertex_ordered()})
        return 0
    if sub == 'gm':
        report = grone_merris_scan(P, config.gm_refine_bits)
        _emit(out, opts, report.render(), report.to_dict())
        return 0 if report.status != 'VIOLATED' else 1
    report = family_pair_recursion_check(P)
    _emit(out, opts, report.render(), report.to_dict())
    return 0 if report.holds else 1

def cmd_catalog(argv, out):
    (opts, args, config) = _setup(argv, "%prog catalog [NAME]")
    if not args:
        names = catalog_names()
        _emit(out, opts, "\n".join(names), names)
        return 0
    doc = to_document(catalog(_one_arg(args, "name"), config.max_vertices))
    out.write(json.dumps(doc, sort_keys=True) + "\n")
    return 0

def cmd_battery(argv, out):
    (opts, args, config) = _setup(argv, "%prog battery [--instances N]",
            [(("--instances",), dict(dest="instances", type="int",
                default=None))])
    instances = opts.instances
    if instances is None:
        instances = config.battery_instances
    summary = identity_battery(config.seed, instances)
    _emit(out, opts, summary.render(), summary.to_dict())
    return 0 if summary.holds else 1

COMMANDS = {
    'spectrum': cmd_spectrum,
    'spoly': cmd_spoly,
    'check': cmd_check,
    'matroid': cmd_matroid,
    'shifted': cmd_shifted,
    'catalog': cmd_catalog,
    'battery': cmd_battery,
}

def main(argv=None, out=None):
    if argv is None:
        argv = sys.argv[1:]
    if out is None:
        out = sys.stdout

    if not argv or argv[0] not in COMMANDS:
        sys.stderr.write(__doc__)
        return 2

    try:
        return COMMANDS[argv[0]](argv[1:], out)
    except (InputError, ConfigError, PreconditionError) as e:
        log.debug("%s failed: %s" % (argv[0], e))
        sys.stderr.write("specrec: %s\n" % e)
        return 2

def specrec():
    """Entry point for the specrec script."""
    sys.exit(main())
