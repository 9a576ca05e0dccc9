package org.mathutil;

import static org.junit.Assert.assertEquals;
import static org.junit.Assert.assertTrue;

import org.junit.Test;

public class MathUtilTest {
    @Test
    public void clampsHighValues() {
        int clamped = MathUtil.clamp(15, 0, 10);
        assertEquals(10, clamped);
    }

    @Test
    public void zeroIsZero() {
        int z = MathUtil.zero();
        assertTrue(z == 0);
    }
}
