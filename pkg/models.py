import json
from datetime import datetime

from extensions import db
from utils import to_report_timezone


class CheckRecord(db.Model):
    """One decided loop: its source text and the certificate document."""
    id = db.Column(db.Integer, primary_key=True)
    source = db.Column(db.Text, nullable=False)
    input_format = db.Column(db.String(10), nullable=True)
    dimension = db.Column(db.Integer, nullable=False)
    verdict = db.Column(db.String(20), nullable=False)  # TERMINATING / NONTERMINATING
    certificate_json = db.Column(db.Text, nullable=False)
    created_at = db.Column(db.DateTime, default=datetime.utcnow)

    @property
    def certificate(self):
        return json.loads(self.certificate_json)

    def to_dict(self):
        created = to_report_timezone(self.created_at)
        return {
            'id': self.id,
            'verdict': self.verdict,
            'dimension': self.dimension,
            'format': self.input_format,
            'source': self.source,
            'certificate': self.certificate,
            'created_at': created.isoformat() if created else None,
        }

    def __repr__(self):
        return f'<CheckRecord {self.id} {self.verdict}>'


class BenchRun(db.Model):
    id = db.Column(db.Integer, primary_key=True)
    seed = db.Column(db.Integer, nullable=False, default=0)
    loops_per_set = db.Column(db.Integer, nullable=False)
    entry_magnitude = db.Column(db.Integer, nullable=False)
    audited = db.Column(db.Integer, nullable=False, default=0)
    audit_failures_json = db.Column(db.Text, nullable=False, default='[]')
    created_at = db.Column(db.DateTime, default=datetime.utcnow)

    rows = db.relationship('BenchRowRecord', backref='run', lazy=True,
                           cascade='all, delete-orphan', order_by='BenchRowRecord.set_index')

    @classmethod
    def from_report(cls, doc):
        """Build a run and its rows from a bench.report_to_dict document."""
        config = doc['config']
        run = cls(
            seed=config['seed'],
            loops_per_set=config['loops_per_set'],
            entry_magnitude=config['entry_magnitude'],
            audited=doc.get('audited', 0),
            audit_failures_json=json.dumps(doc.get('audit_failures', [])),
        )
        for r in doc['rows']:
            run.rows.append(BenchRowRecord(
                set_index=r['set'],
                dimension=r['dimension'],
                loops=r['loops'],
                count_terminating=r['terminating'],
                count_nonterminating=r['nonterminating'],
                errors=r['errors'],
                cpu_terminating=r['cpu_terminating'],
                cpu_nonterminating=r['cpu_nonterminating'],
            ))
        return run

    def to_dict(self):
        created = to_report_timezone(self.created_at)
        return {
            'id': self.id,
            'config': {
                'dimensions': [r.dimension for r in self.rows],
                'loops_per_set': self.loops_per_set,
                'entry_magnitude': self.entry_magnitude,
                'seed': self.seed,
            },
            'rows': [r.to_dict() for r in self.rows],
            'audited': self.audited,
            'audit_failures': json.loads(self.audit_failures_json or '[]'),
            'created_at': created.isoformat() if created else None,
        }


class BenchRowRecord(db.Model):
    id = db.Column(db.Integer, primary_key=True)
    run_id = db.Column(db.Integer, db.ForeignKey('bench_run.id', ondelete='CASCADE'), nullable=False)
    set_index = db.Column(db.Integer, nullable=False)
    dimension = db.Column(db.Integer, nullable=False)
    loops = db.Column(db.Integer, nullable=False)
    count_terminating = db.Column(db.Integer, nullable=False)
    count_nonterminating = db.Column(db.Integer, nullable=False)
    errors = db.Column(db.Integer, nullable=False, default=0)
    cpu_terminating = db.Column(db.Float, nullable=False, default=0.0)
    cpu_nonterminating = db.Column(db.Float, nullable=False, default=0.0)

    def to_dict(self):
        return {
            'set': self.set_index,
            'loops': self.loops,
            'dimension': self.dimension,
            'terminating': self.count_terminating,
            'nonterminating': self.count_nonterminating,
            'errors': self.errors,
            'cpu_terminating': self.cpu_terminating,
            'cpu_nonterminating': self.cpu_nonterminating,
            'cpu_total': round(self.cpu_terminating + self.cpu_nonterminating, 6),
        }
