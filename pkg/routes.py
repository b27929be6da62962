from io import BytesIO
import json

from flask import Blueprint, current_app, jsonify, request, send_file

from bench import BenchConfig, report_to_dict, run_suite
from certificates import verify_certificate
from excel_utils import generate_bench_excel
from extensions import db
from models import BenchRun, CheckRecord
from pipeline import check_source, simulate_source, witness_source
import settings

api_bp = Blueprint('api', __name__, url_prefix='/api')


def _json_body():
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        return None
    return data


def _bad_request(message):
    return jsonify({'success': False, 'error': message}), 400


@api_bp.route('/check', methods=['POST'])
def api_check():
    """Decide a loop and store its certificate"""
    data = _json_body()
    if data is None or not isinstance(data.get('source'), str) or not data['source'].strip():
        return _bad_request('source is required')

    program, cert, doc = check_source(data['source'], data.get('format'))

    record = CheckRecord(
        source=data['source'],
        input_format=data.get('format'),
        dimension=program.dimension,
        verdict=cert.verdict.value,
        certificate_json=json.dumps(doc),
    )
    db.session.add(record)
    db.session.commit()
    current_app.logger.info(f"[API] check {record.id}: {record.verdict} (n={record.dimension})")

    return jsonify({
        'success': True,
        'check_id': record.id,
        'verdict': cert.verdict.value,
        'certificate': doc,
    })


@api_bp.route('/checks/<int:check_id>', methods=['GET'])
def api_get_check(check_id):
    record = db.get_or_404(CheckRecord, check_id)
    return jsonify({'success': True, 'check': record.to_dict()})


@api_bp.route('/verify', methods=['POST'])
def api_verify():
    """Independent re-check of a certificate document"""
    data = _json_body()
    if data is None:
        return _bad_request('a certificate document is required')
    valid, problems = verify_certificate(data)
    return jsonify({'success': True, 'valid': valid, 'problems': problems})


@api_bp.route('/witness', methods=['POST'])
def api_witness():
    data = _json_body()
    if data is None or not isinstance(data.get('source'), str):
        return _bad_request('source is required')
    bound = data.get('bound', settings.SIMULATION_BOUND)
    if not isinstance(bound, int) or bound < 0:
        return _bad_request('bound must be a non-negative integer')
    doc = witness_source(data['source'], data.get('format'), bound)
    return jsonify({'success': True, 'witness': doc})


@api_bp.route('/simulate', methods=['POST'])
def api_simulate():
    data = _json_body()
    if data is None or not isinstance(data.get('source'), str) or 'x' not in data:
        return _bad_request('source and x are required')
    bound = data.get('bound', settings.SIMULATION_BOUND)
    if not isinstance(bound, int) or bound < 0:
        return _bad_request('bound must be a non-negative integer')
    _, doc = simulate_source(data['source'], data['x'], bound, data.get('format'))
    return jsonify({'success': True, 'outcome': doc})


@api_bp.route('/bench', methods=['POST'])
def api_bench():
    """Run a bench suite synchronously and store the report"""
    data = _json_body() or {}
    try:
        config = BenchConfig(
            dimensions=data.get('dimensions', [3]),
            loops_per_set=int(data.get('loops_per_set', 20)),
            entry_magnitude=int(data.get('entry_magnitude', settings.BENCH_MAGNITUDE)),
            seed=int(data.get('seed', 0)),
        )
    except (TypeError, ValueError):
        return _bad_request('loops_per_set, entry_magnitude and seed must be integers')

    doc = report_to_dict(run_suite(config))
    bench_run = BenchRun.from_report(doc)
    db.session.add(bench_run)
    db.session.commit()
    current_app.logger.info(f"[API] bench {bench_run.id}: {len(bench_run.rows)} set(s)")

    return jsonify({'success': True, 'bench_id': bench_run.id, 'report': doc})


@api_bp.route('/bench/<int:bench_id>', methods=['GET'])
def api_get_bench(bench_id):
    bench_run = db.get_or_404(BenchRun, bench_id)
    return jsonify({'success': True, 'report': bench_run.to_dict()})


@api_bp.route('/bench/<int:bench_id>/export_excel', methods=['GET'])
def api_export_bench_excel(bench_id):
    bench_run = db.get_or_404(BenchRun, bench_id)
    wb = generate_bench_excel(bench_run.to_dict(), generated_at=bench_run.created_at)

    output = BytesIO()
    wb.save(output)
    output.seek(0)

    return send_file(
        output,
        mimetype='application/vnd.openxmlformats-officedocument.spreadsheetml.sheet',
        as_attachment=True,
        download_name=f'bench_{bench_id}.xlsx'
    )
