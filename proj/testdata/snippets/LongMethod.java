public class LongMethod {
	public int grind(int seed) {
		int total = seed;
		if (total > 0) {
			total = total - 1;
		}
		if (total > 1) {
			total = total - 2;
		}
		if (total > 2) {
			total = total - 3;
		}
		if (total > 3) {
			total = total - 4;
		}
		if (total > 4) {
			total = total - 5;
		}
		if (total > 5) {
			total = total - 6;
		}
		if (total > 6) {
			total = total - 7;
		}
		if (total > 7) {
			total = total - 8;
		}
		if (total > 8) {
			total = total - 9;
		}
		if (total > 9) {
			total = total - 10;
		}
		if (total > 10) {
			total = total - 11;
		}
		if (total > 11) {
			total = total - 12;
		}
		if (total > 12) {
			total = total - 13;
		}
		if (total > 13) {
			total = total - 14;
		}
		if (total > 14) {
			total = total - 15;
		}
		if (total > 15) {
			total = total - 16;
		}
		if (total > 16) {
			total = total - 17;
		}
		if (total > 17) {
			total = total - 18;
		}
		if (total > 18) {
			total = total - 19;
		}
		if (total > 19) {
			total = total - 20;
		}
		if (total > 20) {
			total = total - 21;
		}
		if (total > 21) {
			total = total - 22;
		}
		if (total > 22) {
			total = total - 23;
		}
		if (total > 23) {
			total = total - 24;
		}
		return total;
	}

	public int small(int x) {
		int y = x * 2;
		return y + 1;
	}
}
