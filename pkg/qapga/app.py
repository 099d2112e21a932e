# -*- coding: utf-8 -*-
import os.path

from flask import Flask, current_app, jsonify, redirect, request, url_for
from flask_restful import Api, Resource, abort

from qapga import config
from qapga.bench import baseline_index, compute_gap, format_gap, read_baselines
from qapga.custom_log import prepare_logger
from qapga.ga_engine import GaConfig, run
from qapga.importer import find_instance_file, list_instance_files, read_qaplib
from qapga.instance import QapDataException


logger = prepare_logger(__name__, __file__)

app = Flask(__name__)
app.config.from_object(config)

# -------------------------------------------------------------------------
# Definitions
# -------------------------------------------------------------------------
API_ITEM_URL_KEY = '_api_item_url'


api = Api(app)


def cap_generations(generations):
    """Restrict GA runs served over HTTP"""
    limit = current_app.config.get('API_MAX_GENERATIONS')
    if limit and (generations <= 0 or generations > limit):
        generations = limit
    return generations


def load_instance(name):
    try:
        instance_file = find_instance_file(current_app.config['QAPLIB_DIR'], name)
        return read_qaplib(instance_file.path, name=instance_file.name)
    except IOError:
        abort(404, message="Unknown instance %s" % (name))
    except QapDataException as e:
        abort(400, message=str(e))


def load_baselines():
    fpath = current_app.config.get('BASELINES_FILEPATH')
    if not fpath or not os.path.isfile(fpath):
        return {}
    return baseline_index(read_baselines(fpath))


# -------------------------------------------------------------------------
# Index
# -------------------------------------------------------------------------
class Index(Resource):
    def get(self):
        return redirect(url_for("instances"))

api.add_resource(Index, '/', endpoint="index")


# -------------------------------------------------------------------------
# Instances
# -------------------------------------------------------------------------
class InstanceListAPI(Resource):
    def get(self):
        try:
            instance_files = list_instance_files(current_app.config['QAPLIB_DIR'])
        except IOError:
            instance_files = []

        instances = []
        for instance_file in instance_files:
            instances.append({
                "name": instance_file.name,
                API_ITEM_URL_KEY: url_for('instance', name=instance_file.name),
                })

        return jsonify({"instances": instances, "total": len(instances)})

api.add_resource(InstanceListAPI, '/api/instances', endpoint="instances")


class InstanceAPI(Resource):
    def get(self, name):
        inst = load_instance(name)
        baseline = load_baselines().get(inst.name)

        return jsonify({
            "name": inst.name,
            "n": inst.n,
            "symmetric": inst.is_symmetric,
            "best_known": baseline.best_known if baseline else None,
            API_ITEM_URL_KEY: url_for('instance', name=inst.name),
            })

api.add_resource(InstanceAPI, '/api/instances/<string:name>', endpoint="instance")


class SolveAPI(Resource):
    def get(self, name):
        inst = load_instance(name)
        if inst.n > current_app.config.get('API_MAX_N', inst.n):
            abort(400, message="Instance %s too large to solve over HTTP (n=%d)" % (inst.name, inst.n))

        try:
            cfg = GaConfig().replace(
                population_size=request.args.get('pop', type=int),
                max_generations=cap_generations(
                    request.args.get('generations', current_app.config['MAX_GENERATIONS'], type=int)),
                rng_seed=request.args.get('seed', type=int),
                target_cost=request.args.get('target', type=int),
                )
        except QapDataException as e:
            abort(400, message=str(e))

        result = run(inst, cfg)
        data = result.to_dict()
        data["name"] = inst.name
        data["seed"] = cfg.rng_seed

        baseline = load_baselines().get(inst.name)
        if baseline:
            data["best_known"] = baseline.best_known
            data["gap"] = format_gap(compute_gap(result.best.cost, baseline.best_known))

        return jsonify(data)

api.add_resource(SolveAPI, '/api/instances/<string:name>/solve', endpoint="solve")


# -------------------------------------------------------------------------
# Baselines
# -------------------------------------------------------------------------
class BaselineListAPI(Resource):
    def get(self):
        records = sorted(load_baselines().values(), key=lambda r: r.instance_name)
        return jsonify({
            "baselines": [r._asdict() for r in records],
            "total": len(records),
            })

api.add_resource(BaselineListAPI, '/api/baselines', endpoint="baselines")


def main():
    """Main application"""
    app.run(
        host=app.config.get('HOST'),
        port=app.config.get('PORT'),
        )


if __name__ == '__main__':
    main()
